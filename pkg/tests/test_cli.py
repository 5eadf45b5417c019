import csv
import io

import pytest

from fran_dtb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,first", [
    (["--n", "2,5,4", "--mu", "1/3", "--nf", "0", "--mode", "serial"], "1/3"),
    (["--n", "2,5,6", "--mu", "0", "--nf", "0", "--mode", "serial"], "1/3"),
    (["--n", "2,5,4", "--mu", "0", "--nf", "1", "--mode", "parallel"], "1/3"),
])
def test_compute(capsys, argv, first):
    code, out, _ = run(capsys, "compute", *argv)
    assert code == 0 and out.splitlines()[0] == first
    assert "binding" in out and "Class" in out


def test_compute_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["compute", "--n", "2,5", "--mu", "0"])
    assert e.value.code != 0


def test_sweep_rows_and_determinism(capsys, tmp_path):
    argv = ["sweep", "--n", "2,5,4", "--mu-steps", "12", "--nf", "0,1,2,5,10", "--mode", "both"]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(p1)]) == 0
    assert main(argv + ["--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    rows = list(csv.DictReader(io.StringIO(p1.read_text())))
    assert len(rows) == 130
    par = [r for r in rows if r["mode"] == "parallel" and int(r["nF"]) >= 1]
    assert {(r["dtb_num"], r["dtb_den"]) for r in par} == {("1", "3")}
    corner = [r for r in rows if r["mode"] == "serial" and r["nF"] == "0" and (r["mu_num"], r["mu_den"]) == ("1", "3")]
    assert (corner[0]["dtb_num"], corner[0]["dtb_den"]) == ("1", "3")
    keys = [(r["nF"], r["mode"]) for r in rows]
    assert keys == sorted(keys, key=lambda k: (int(k[0]), k[1]))


def test_sweep_plot(tmp_path):
    pytest.importorskip("matplotlib")
    png = tmp_path / "c.png"
    assert main(["sweep", "--n", "2,5,4", "--nf", "0,2", "--out", str(tmp_path / "c.csv"), "--plot", str(png)]) == 0
    assert png.stat().st_size > 0


def test_verify_corners(capsys):
    code, out, _ = run(capsys, "verify", "--corner", "B2", "--n", "2,5,4")
    assert code == 0 and "B2 SCL" in out and "ok" in out
    code, out, _ = run(capsys, "verify", "--corner", "A1", "--n", "2,5,4", "--nf", "1")
    assert code == 0 and "table 6 vs LP 6" in out
    code, out, _ = run(capsys, "verify", "--corner", "C1", "--n", "2,5,4")
    assert code == 1


def test_verify_small_grid(capsys):
    code, out, _ = run(capsys, "verify", "--grid-max", "3", "--nf-max", "3", "--samples", "5")
    assert code == 0 and "all tight" in out


@pytest.mark.parametrize("argv,expect", [
    (["--n", "2,5,4", "--mu", "1/3", "--L", "3"], ["T_F=0 T_E=1", "empirical 1/3"]),
    (["--mode", "parallel", "--B", "10", "--L", "60", "--nf", "1"], ["T_P=21", "excess 1/60"]),
    (["--n", "2,5,6", "--mu", "1/2", "--L", "4"], ["T_E=1", "empirical 1/4"]),
])
def test_simulate(capsys, argv, expect):
    code, out, _ = run(capsys, "simulate", *argv)
    assert code == 0 and "errors=0" in out
    for e in expect:
        assert e in out


def test_simulate_rounds_file_size(capsys, tmp_path):
    out_path = tmp_path / "s.json"
    code, out, err = run(capsys, "simulate", "--mu", "1/3", "--L", "4", "--out", str(out_path))
    assert code == 0 and "using L=6" in err and out_path.exists()
    code, _, err = run(capsys, "simulate", "--mu", "1/3", "--L", "4", "--strict")
    assert code == 1 and "multiple" in err
