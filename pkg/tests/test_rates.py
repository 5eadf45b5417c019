from fractions import Fraction as Fr

import pytest

from fran_dtb.errors import RegimeNotCovered
from fran_dtb.grid import channels
from fran_dtb.ldm import INF, make_channel
from fran_dtb.lp import solve_maximin
from fran_dtb.rates import (
    Corner,
    check_parallel,
    check_serial,
    parallel_rate_lp,
    serial_fronthaul_lp,
    serial_lp_spec,
    serial_rate_lp,
    table_allocation,
)
from fran_dtb.regimes import broadcast_dtb, thresholds, wireless_bottleneck


def test_serial_examples(ex1, ex2):
    a = serial_rate_lp(Fr(1, 3), ex1)
    assert a.Lbar == 3 and not check_serial(a, Fr(1, 3), ex1)
    assert serial_rate_lp(0, ex1).Lbar == Fr(5, 2)
    assert serial_rate_lp(Fr(1, 2), ex2).Lbar == 4


def test_parallel_examples(ex1):
    a = parallel_rate_lp(0, 1, ex1)
    assert a.Ltilde == 6 and not check_parallel(a, 0, 1, ex1)
    for n in channels(4):
        b = broadcast_dtb(n)
        expect = 0 if b == INF else 2 / b
        assert parallel_rate_lp(0, 0, n).Ltilde == expect


def test_full_cache_reaches_bottleneck_only():
    for n in channels(5):
        assert serial_rate_lp(1, n).Lbar == 1 / wireless_bottleneck(n)


def test_lp_vertices_pass_the_recheck():
    for n in channels(5):
        for mu in (0, Fr(1, 3), 1):
            assert not check_serial(serial_rate_lp(mu, n), mu, n)
            for nF in (0, 2):
                assert not check_parallel(parallel_rate_lp(mu, nF, n), mu, nF, n)


def test_fronthaul_lp_example(ex1):
    fa = serial_fronthaul_lp(0, 10, ex1)
    assert fa.dtb == Fr(11, 30)
    assert fa.mu_G == Fr(1, 3) and fa.deficit == Fr(1, 3)


def test_equal_links_give_same_value_either_layout():
    # on nd2 == nd3 the strong and weak cross-link layouts are both valid
    for c in range(1, 6):
        for a in range(0, 6):
            n = make_channel(a, c, c)
            for mu in (0, Fr(1, 2), 1):
                scl = serial_rate_lp(mu, n).Lbar
                # WCL variant: the same spec with R1p counted for user 2
                spec = serial_lp_spec(mu, n)
                swapped = type(spec)(spec.num_vars, (
                    tuple(v if i else 0 for i, v in enumerate(spec.user_rates[0])),
                    tuple(v + (1 if i == 0 else 0) for i, v in enumerate(spec.user_rates[1])),
                ), spec.constraints, spec.names)
                assert solve_maximin(swapped)[0] == scl


def test_table_allocation_examples(ex1):
    a = table_allocation(Corner.B2, None, ex1)
    assert a.Lbar == 3 and a.R1p_w == 1 and a.RIN_v == 1
    b = table_allocation(Corner.B1, None, (6, 2, 6))
    assert b.Lbar == 4 and not check_serial(b, thresholds((6, 2, 6)).mu_dprime, (6, 2, 6))
    assert table_allocation(Corner.A1_par, 1, ex1).Ltilde == 6
    with pytest.raises(ValueError):
        table_allocation(Corner.B2, Fr(1, 2), ex1)


def test_corrected_b2_weak_column():
    a = table_allocation(Corner.B2, None, (6, 2, 4))
    assert a.RIN_n == 2 and not check_serial(a, 1, (6, 2, 4))


def test_uncovered_channel_raises():
    with pytest.raises(RegimeNotCovered):
        table_allocation(Corner.C1, None, (2, 5, 4))
