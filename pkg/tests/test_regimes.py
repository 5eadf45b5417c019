from fractions import Fraction as Fr

import pytest

from fran_dtb.grid import channels
from fran_dtb.ldm import INF, make_channel
from fran_dtb.regimes import (
    BroadcastCond,
    Crosslink,
    Klass,
    admissible_classes,
    binding_term,
    broadcast_condition,
    broadcast_dtb,
    classify,
    delta_dprime,
    dtb_parallel,
    dtb_parallel_terms,
    dtb_serial,
    dtb_serial_terms,
    dtb_serial_theorem,
    nf_max,
    thresholds,
    wireless_bottleneck,
)


def test_first_example(ex1):
    assert dtb_serial(0, 0, ex1) == Fr(2, 5)
    assert dtb_serial(Fr(1, 3), 0, ex1) == Fr(1, 3)
    th = thresholds(ex1)
    assert th.mu_prime == Fr(1, 3)
    assert th.delta_lb_prime == Fr(1, 3)
    assert th.nF_max == 1
    assert classify(ex1).klass is Klass.I and classify(ex1).crosslink is Crosslink.SCL


def test_second_example(ex2):
    assert dtb_serial(0, 0, ex2) == Fr(1, 3)
    assert thresholds(ex2).mu_prime == Fr(1, 2)
    assert dtb_serial(Fr(1, 2), 0, ex2) == Fr(1, 4)
    assert classify(ex2).crosslink is Crosslink.WCL


def test_class_examples():
    assert classify((6, 2, 6)).klass is Klass.II
    assert classify((1, 8, 2)).klass is Klass.IV
    assert dtb_serial(Fr(1, 4), 4, (6, 2, 6)) == Fr(5, 16)
    assert dtb_serial(0, 0, (1, 8, 2)) == Fr(1, 2)


def test_fronthaul_example(ex1):
    assert dtb_serial(0, 10, ex1) == Fr(11, 30)
    assert dtb_parallel(0, 1, ex1) == Fr(1, 3)


def test_broadcast_conditions():
    assert broadcast_condition((0, 5, 4)) is BroadcastCond.I0
    assert broadcast_condition((0, 9, 4)) is BroadcastCond.I0C
    assert broadcast_condition((0, 3, 4)) is BroadcastCond.I1
    assert broadcast_condition((0, 1, 4)) is BroadcastCond.I1C
    # with no cross link user 1 cannot be served by the eNB
    assert broadcast_dtb((2, 0, 4)) == INF


def test_zero_cross_link_needs_cache_or_fronthaul():
    n = make_channel(3, 0, 2)
    assert dtb_serial(0, 0, n) == INF
    assert dtb_serial(1, 0, n) == wireless_bottleneck(n)
    assert dtb_serial(0, 3, n) < INF
    assert dtb_parallel(0, 0, n) == INF and dtb_parallel(0, 1, n) < INF


def test_every_grid_channel_has_a_class():
    for n in channels():
        assert admissible_classes(n)


def test_nf_max_never_exceeds_henb_strength():
    for n in channels():
        assert 0 <= nf_max(n) <= n.nd1


def test_delta_dprime_defaults_to_bottleneck():
    assert delta_dprime((2, 5, 4)) == wireless_bottleneck((2, 5, 4))
    assert delta_dprime((6, 2, 6)) == Fr(1, 4)


def test_threshold_optionals():
    th = thresholds((0, 5, 4))
    assert th.mu_dprime is None and th.mu_tprime is None
    th = thresholds((6, 2, 6))
    assert th.mu_dprime == Fr(1, 2) and th.mu_tprime == Fr(2, 3)


def test_binding_terms(ex1):
    assert binding_term(dtb_serial_terms(0, 0, ex1)) == "(2-mu)/max(nd2,nd3)"
    assert binding_term(dtb_parallel_terms(0, 5, ex1)) == "bottleneck"


def test_theorem_form_matches_corollary_split():
    for n in channels(6):
        for nF in range(8):
            for k in range(5):
                mu = Fr(k, 4)
                assert dtb_serial(mu, nF, n) == dtb_serial_theorem(mu, nF, n)


@pytest.mark.parametrize("mu,nF", [(Fr(3, 2), 0), (0, -1)])
def test_input_checks(mu, nF):
    with pytest.raises(ValueError):
        dtb_serial(mu, nF, (2, 5, 4))
