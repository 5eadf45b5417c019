"""Command line: compute, sweep, verify and simulate."""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .certify import check_point, grid_failures, sample_tables
from .errors import FranError, IndivisibleFileSize, InsufficientFronthaul
from .ldm import INF, ChannelParams, make_channel, rat
from .rates import Corner
from .regimes import (
    binding_term,
    classify,
    dtb_parallel,
    dtb_parallel_terms,
    dtb_serial,
    dtb_serial_terms,
    thresholds,
    wireless_bottleneck,
)
from .schemes import Demand, parallel_granule, serial_granule, synth_parallel, synth_serial_with_fronthaul
from .sim import DEFAULT_SEED, DeliveryMode, empirical_dtb, random_libraries, run_delivery

FIELDS = [
    "nd1", "nd2", "nd3", "nF", "mu_num", "mu_den", "mode", "dtb_num", "dtb_den", "dtb_decimal",
    "regime_class", "crosslink", "bottleneck_num", "bottleneck_den",
]


@dataclass(frozen=True)
class SweepRow:
    n: tuple[int, int, int]
    nF: int
    mu_num: int
    mu_den: int
    mode: str
    dtb_num: int
    dtb_den: int
    regime_class: str
    crosslink: str
    bottleneck_num: int
    bottleneck_den: int

    def key(self):
        return (self.n, self.nF, self.mode, Fraction(self.mu_num, self.mu_den))

    def cells(self) -> list:
        dec = "inf" if self.dtb_den == 0 else f"{self.dtb_num / self.dtb_den:.6f}"
        return [*self.n, self.nF, self.mu_num, self.mu_den, self.mode, self.dtb_num, self.dtb_den, dec,
                self.regime_class, self.crosslink, self.bottleneck_num, self.bottleneck_den]


def _frac_pair(x) -> tuple[int, int]:
    # an unbounded DTB is written 1/0
    if x == INF:
        return 1, 0
    return x.numerator, x.denominator


def fmt(x) -> str:
    return "inf" if x == INF else str(x)


def parse_n(text: str) -> ChannelParams:
    try:
        a, b, c = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected nd1,nd2,nd3, got {text!r}")
    try:
        return make_channel(a, b, c)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def parse_mu(text: str) -> Fraction:
    try:
        mu = rat(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad fraction {text!r}")
    if not 0 <= mu <= 1:
        raise argparse.ArgumentTypeError("mu must lie in [0, 1]")
    return mu


def parse_ints(text: str) -> list[int]:
    """``0,1,5`` or a range ``lo:hi`` (inclusive)."""
    try:
        if ":" in text:
            lo, hi = (int(v) for v in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


# -- compute -----------------------------------------------------------------------


def cmd_compute(args) -> int:
    n, mu, nF = args.n, args.mu, args.nf
    if args.mode == "serial":
        terms = dtb_serial_terms(mu, nF, n)
        d = dtb_serial(mu, nF, n)
    else:
        terms = dtb_parallel_terms(mu, nF, n)
        d = dtb_parallel(mu, nF, n)
    th = thresholds(n, nF)
    out = sys.stdout
    print(fmt(d), file=out)
    dec = "inf" if d == INF else f"{float(d):.6f}"
    print(f"decimal     {dec}", file=out)
    print(f"class       {classify(n)}", file=out)
    print(f"binding     {binding_term(terms)}", file=out)
    for name, value in terms:
        print(f"  term {name} = {fmt(value)}", file=out)
    for name in ("delta_lb_prime", "delta_lb_dprime", "mu_prime", "mu_dprime", "mu_tprime",
                 "mu_prime_P", "mu_dprime_P", "mu_tprime_P", "nF_IM", "nF_max"):
        v = getattr(th, name)
        print(f"{name:<12}{'-' if v is None else v}", file=out)
    return 0


# -- sweep -------------------------------------------------------------------------


def sweep_rows(channels: Sequence[ChannelParams], mu_steps: int, nfs: Sequence[int], modes: Sequence[str]) -> list[SweepRow]:
    rows = []
    for n, nF, mode, k in product(channels, nfs, modes, range(mu_steps + 1)):
        mu = Fraction(k, mu_steps)
        d = dtb_serial(mu, nF, n) if mode == "serial" else dtb_parallel(mu, nF, n)
        rc = classify(n)
        b = wireless_bottleneck(n)
        rows.append(SweepRow(n.n, nF, mu.numerator, mu.denominator, mode, *_frac_pair(d),
                             rc.klass.value, rc.crosslink.value, b.numerator, b.denominator))
    rows.sort(key=SweepRow.key)
    return rows


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


def _sweep_channels(args) -> list[ChannelParams]:
    if args.n:
        return sorted(set(args.n), key=lambda c: c.n)
    out = []
    for a, b, c in product(args.nd1, args.nd2, args.nd3):
        try:
            out.append(make_channel(a, b, c))
        except ValueError:
            continue
    return out


def cmd_sweep(args) -> int:
    channels = _sweep_channels(args)
    if not channels:
        print("no valid channel in the requested ranges", file=sys.stderr)
        return 2
    modes = ["serial", "parallel"] if args.mode == "both" else [args.mode]
    rows = sweep_rows(channels, args.mu_steps, args.nf, modes)
    text = rows_to_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    if args.plot:
        from .plot import plot_rows

        plot_rows(rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


# -- verify ------------------------------------------------------------------------

_CORNERS = {"B1": Corner.B1, "B2": Corner.B2, "C1": Corner.C1, "A1": Corner.A1_par, "A2": Corner.A2_par}


def cmd_verify(args) -> int:
    if args.corner:
        if args.n is None:
            print("--corner needs --n", file=sys.stderr)
            return 2
        corner = _CORNERS[args.corner]
        checks = check_point(corner, args.n[0], args.nf)
        if not checks:
            print(f"n={args.n[0]} lies in no column of the {args.corner} table")
            return 1
        for c in checks:
            print(c.describe())
        return 0 if all(c.ok for c in checks) else 1

    failures = list(grid_failures(args.grid_max, args.nf_max))
    tables = sample_tables(args.samples, seed=args.seed)
    for label, checks in sorted(tables.items()):
        bad = [c for c in checks if not c.ok]
        if len(checks) < args.samples:
            failures.append(f"{label}: only {len(checks)} samples inside its regime")
        failures += [c.describe() for c in bad]
    if failures:
        print(f"{len(failures)} failing checks:")
        for line in failures:
            print("  " + line)
        return 1
    print(f"all tight over the grid up to {args.grid_max} (nF <= {args.nf_max}); "
          f"{len(tables)} table columns match their LP on {args.samples} channels each")
    return 0


# -- simulate ----------------------------------------------------------------------


def _round_up(L: int, g: int) -> int:
    return max(g, math.ceil(L / g) * g)


def cmd_simulate(args) -> int:
    n, mu, nF = args.n[0] if isinstance(args.n, list) else args.n, args.mu, args.nf
    parallel = args.mode == "parallel"
    try:
        g = parallel_granule(mu, nF, n, args.B) if parallel else serial_granule(mu, nF, n)
    except InsufficientFronthaul as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    L = args.L if args.L else g
    if L % g:
        if args.strict:
            print(f"error: {IndivisibleFileSize(L, g)}", file=sys.stderr)
            return 1
        new = _round_up(L, g)
        print(f"warning: L={L} is not a multiple of {g}; using L={new} (scale {Fraction(new, L)})", file=sys.stderr)
        L = new
    scheme = synth_parallel(mu, nF, n, L, args.B) if parallel else synth_serial_with_fronthaul(mu, nF, n, L)
    lib = random_libraries(1, max(2, args.files), L, args.seed)[0]
    t = run_delivery(scheme, lib, Demand(0, 1), n)
    mode = DeliveryMode.Parallel if parallel else DeliveryMode.Serial
    emp = empirical_dtb(t, L, mode)
    analytic = dtb_parallel(mu, nF, n) if parallel else dtb_serial(mu, nF, n)
    if parallel:
        print(f"T_P={t.T_P} L={L} B={args.B}")
    else:
        print(f"T_F={t.T_F} T_E={t.T_E} L={L}")
    print(f"errors={t.errors}")
    print(f"empirical {emp}  analytic {fmt(analytic)}  excess {emp - analytic}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write('{"scheme": ' + scheme.to_json() + ',\n"transcript": ' + t.to_json() + "}\n")
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fran-dtb", description="Delivery time per bit of a cache- and cloud-aided two-user network.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compute", help="DTB at one point")
    c.add_argument("--n", type=parse_n, required=True, help="nd1,nd2,nd3")
    c.add_argument("--mu", type=parse_mu, default=Fraction(0))
    c.add_argument("--nf", type=nonneg, default=0)
    c.add_argument("--mode", choices=["serial", "parallel"], default="serial")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("sweep", help="write DTB curves as CSV")
    s.add_argument("--n", type=parse_n, action="append", help="channel nd1,nd2,nd3 (repeatable)")
    s.add_argument("--nd1", type=parse_ints, default=[0, 1, 2, 3, 4])
    s.add_argument("--nd2", type=parse_ints, default=[0, 1, 2, 3, 4])
    s.add_argument("--nd3", type=parse_ints, default=[1, 2, 3, 4])
    s.add_argument("--mu-steps", type=int, default=8)
    s.add_argument("--nf", type=parse_ints, default=[0])
    s.add_argument("--mode", choices=["serial", "parallel", "both"], default="both")
    s.add_argument("--out", default="-", help="CSV path, - for stdout")
    s.add_argument("--plot", metavar="PNG", help="also draw the curves (needs matplotlib)")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="certify the grid and the rate tables")
    v.add_argument("--grid-max", type=nonneg, default=8)
    v.add_argument("--nf-max", type=nonneg, default=10)
    v.add_argument("--samples", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--corner", choices=sorted(_CORNERS))
    v.add_argument("--n", type=parse_n, action="append")
    v.add_argument("--nf", type=nonneg, default=0)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("simulate", help="synthesise a scheme and run it bit by bit")
    m.add_argument("--n", type=parse_n, default=make_channel(2, 5, 4))
    m.add_argument("--mu", type=parse_mu, default=Fraction(0))
    m.add_argument("--nf", type=nonneg, default=0)
    m.add_argument("--mode", choices=["serial", "parallel"], default="serial")
    m.add_argument("--L", type=int, default=0, help="file size in bits (0 picks the smallest)")
    m.add_argument("--B", type=int, default=1, help="blocks of the parallel scheme")
    m.add_argument("--files", type=int, default=2)
    m.add_argument("--seed", type=int, default=DEFAULT_SEED)
    m.add_argument("--out", help="write scheme and transcript here")
    m.add_argument("--strict", action="store_true", help="fail instead of enlarging L")
    m.set_defaults(func=cmd_simulate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FranError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
