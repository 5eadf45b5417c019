from fractions import Fraction as Fr

import numpy as np
import pytest

from fran_dtb.errors import PlanConflict, SchemeError
from fran_dtb.schemes import ChannelUse, Demand, Scheme, synth_parallel, synth_serial_cache_only, synth_serial_with_fronthaul
from fran_dtb.sim import (
    DeliveryMode,
    Verdict,
    empirical_dtb,
    random_libraries,
    run_delivery,
    run_delivery_batch,
    verify_optimality,
)


def test_first_example_delivery(ex1):
    s = synth_serial_cache_only(Fr(1, 3), ex1, 3)
    lib = [[1, 0, 1], [0, 1, 1]]
    t = run_delivery(s, lib, Demand(0, 1))
    assert t.decoded == ((1, 0, 1), (0, 1, 1))
    assert t.T_E == 1 and t.errors == 0
    assert empirical_dtb(t, 3, DeliveryMode.Serial) == Fr(1, 3)


def test_other_demands_and_larger_library(ex1):
    s = synth_serial_cache_only(Fr(1, 3), ex1, 3)
    lib = random_libraries(1, 4, 3, seed=3)[0]
    t = run_delivery(s, lib, Demand(3, 1))
    assert t.decoded == (tuple(lib[3]), tuple(lib[1]))


def test_broadcast_delivery(ex1):
    s = synth_serial_cache_only(0, ex1, 5)
    t = run_delivery(s, random_libraries(1, 2, 5)[0], Demand(0, 1))
    assert t.T_E == 2 and len(t.decoded[0]) == 5


def test_fronthaul_delivery(ex1):
    s = synth_serial_with_fronthaul(0, 10, ex1, 30)
    t = run_delivery(s, random_libraries(1, 2, 30)[0], Demand(0, 1))
    assert (t.T_F, t.T_E) == (1, 10)
    assert empirical_dtb(t, 30, DeliveryMode.Serial) == Fr(11, 30)


def test_parallel_delivery(ex1):
    s = synth_parallel(0, 1, ex1, 60, 10)
    t = run_delivery(s, random_libraries(1, 2, 60)[0], Demand(0, 1))
    assert t.T_P == 21 and t.errors == 0
    emp = empirical_dtb(t, 60, DeliveryMode.Parallel)
    assert emp - Fr(1, 3) == Fr(1, 60)


def test_corrupted_scheme_is_caught(ex1):
    s = synth_serial_cache_only(Fr(1, 3), ex1, 3)
    u = s.channel_uses[0]
    # drop the bottom eNB level: one of user 1's bits disappears
    broken = Scheme(s.mode, s.L, s.n, s.mu, s.nF, s.placement,
                    (ChannelUse(u.time, u.x1, u.x2[:-1] + ((),)),), s.fronthaul_plan, s.extension, s.rate)
    with pytest.raises(PlanConflict):
        run_delivery(broken, [[1, 0, 1], [0, 1, 1]], Demand(0, 1))


def test_henb_without_its_bits_is_rejected(ex1):
    s = synth_serial_cache_only(Fr(1, 3), ex1, 3)
    from fran_dtb.schemes import Placement
    bare = Scheme(s.mode, s.L, s.n, s.mu, s.nF, Placement(()), s.channel_uses, (), s.extension, s.rate)
    with pytest.raises(SchemeError):
        run_delivery_batch(bare, random_libraries(2, 2, 3), Demand(0, 1))


def test_certificates(ex1):
    c = verify_optimality(Fr(1, 3), 0, ex1, DeliveryMode.Serial)
    assert c.verdict is Verdict.Tight and c.closed_form == Fr(1, 3)
    c = verify_optimality(0, 1, ex1, DeliveryMode.Parallel)
    assert c.verdict is Verdict.Tight and c.achievability == Fr(1, 3)
    c = verify_optimality(0, 0, (1, 8, 2), DeliveryMode.Serial)
    assert c.verdict is Verdict.Tight and c.converse == Fr(1, 2)
    assert '"Tight"' in c.to_json()


def test_batch_shapes(ex1):
    s = synth_serial_cache_only(Fr(1, 3), ex1, 3)
    dec, err = run_delivery_batch(s, random_libraries(7, 3, 3), Demand(2, 0))
    assert dec.shape == (7, 2, 3) and not err.any()
    with pytest.raises(ValueError):
        run_delivery_batch(s, np.zeros((2, 2, 4)), Demand(0, 1))
