from fractions import Fraction as Fr
from itertools import product

import numpy as np
import pytest

from fran_dtb.errors import IndivisibleFileSize, InsufficientFronthaul
from fran_dtb.schemes import (
    Demand,
    Mode,
    Scheme,
    decode_plan,
    parallel_granule,
    received_symbols,
    serial_granule,
    synth_parallel,
    synth_serial_cache_only,
    synth_serial_with_fronthaul,
)
from fran_dtb.sim import run_delivery_batch


def levels(use):
    return [tuple(sorted(s)) for s in use]


def test_first_example_structure(ex1):
    s = synth_serial_cache_only(Fr(1, 3), ex1, 3)
    assert s.T_E == 1 and s.T_F == 0 and s.placement.cache_bits_per_file == 1
    (u,) = s.channel_uses
    # eNB: one bit of W1 on top, three of W2, one more of W1 at the bottom
    assert [k for (k, _), in u.x2] == [0, 1, 1, 1, 0]
    # HeNB: a single XOR of one bit of each file on its top level
    assert len(u.x1[0]) == 2 and {k for k, _ in u.x1[0]} == {0, 1}
    assert all(not sym for sym in u.x1[1:])
    p = s.placement.positions[0]
    assert u.x1[0] == ((0, p), (1, p))


def test_second_example_structure(ex2):
    s = synth_serial_cache_only(Fr(1, 2), ex2, 4)
    assert s.T_E == 1 and s.placement.cache_bits_per_file == 2
    (u,) = s.channel_uses
    assert sum(len(x) == 2 for x in u.x1) == 2
    # the weak cross-link layout sends one private bit of W2 below the common block
    assert u.x2[-1] and u.x2[-1][0][0] == 1


def test_broadcast_needs_two_uses(ex1):
    s = synth_serial_cache_only(0, ex1, 5)
    assert s.T_E == 2 and s.extension == 2 and not s.placement.positions
    assert all(not sym for u in s.channel_uses for sym in u.x1)


def test_fronthaul_example(ex1):
    s = synth_serial_with_fronthaul(0, 10, ex1, 30)
    assert s.mode is Mode.SerialWithFronthaul
    assert (s.T_F, s.T_E) == (1, 10)
    assert all(len(f.payload) <= 10 for f in s.fronthaul_plan)
    assert sum(len(f.payload) for f in s.fronthaul_plan) == 10


def test_corner_cache_needs_no_fronthaul(ex1):
    s = synth_serial_with_fronthaul(Fr(1, 3), 4, ex1, 3)
    assert s.mode is Mode.SerialCacheOnly and s.T_F == 0


def test_parallel_example(ex1):
    s = synth_parallel(0, 1, ex1, 60, 10)
    assert s.T_P == 21 and s.block_params.B == 10
    # the HeNB only forwards what reached it strictly earlier
    sent = {}
    for f in s.fronthaul_plan:
        assert len(f.payload) <= 1
        for sym in f.payload:
            sent.setdefault(sym, f.time)
    for u in s.channel_uses:
        for sym in u.x1:
            if sym:
                assert sent[sym] < u.time


def test_divisibility_and_infinite_cases(ex1):
    with pytest.raises(IndivisibleFileSize) as err:
        synth_serial_cache_only(Fr(1, 3), ex1, 4)
    assert err.value.granule == 3
    assert serial_granule(0, 10, ex1) == 30
    assert parallel_granule(0, 1, ex1, 10) == 60
    with pytest.raises(InsufficientFronthaul):
        synth_serial_cache_only(0, (3, 0, 2), 4)


def test_cache_budget_and_level_exclusivity():
    for n, mu, nF in [((2, 5, 4), Fr(1, 6), 5), ((6, 2, 6), Fr(1, 4), 4), ((3, 0, 2), 0, 3), ((4, 1, 5), Fr(1, 2), 1)]:
        L = serial_granule(mu, nF, n)
        s = synth_serial_with_fronthaul(mu, nF, n, L)
        assert s.placement.cache_bits_per_file <= mu * L
        for u in s.channel_uses:
            assert len(u.x1) == len(u.x2) == s.n.q
        bits = [a for u in s.channel_uses for sym in u.x2 for a in sym]
        assert len(bits) == len(set(bits))


def test_json_round_trip(ex1):
    for s in (synth_serial_with_fronthaul(0, 10, ex1, 30), synth_parallel(0, 1, ex1, 12, 2), synth_serial_cache_only(0, ex1, 5)):
        again = Scheme.from_json(s.to_json())
        assert again == s


def test_plan_reads_every_bit_once(ex1):
    s = synth_serial_cache_only(Fr(1, 3), ex1, 3)
    plan = decode_plan(s, ex1)
    for k, steps in enumerate(plan.steps):
        own = [st.atom for st in steps if st.atom[0] == k]
        assert sorted(own) == [(k, j) for j in range(3)]
    # user 1 gets its cached-side bit from the XOR overlay on the IN level
    y1, _ = received_symbols(s, ex1)
    assert any(len(cell) == 1 for cell in y1[0])


def test_exhaustive_round_trip_small_instances():
    # all file pairs for L <= 6 bits
    cases = [((2, 5, 4), Fr(1, 3), 0, 3), ((2, 5, 6), Fr(1, 2), 0, 4), ((2, 5, 4), 0, 0, 5), ((1, 2, 3), 0, 2, 6)]
    for n, mu, nF, L in cases:
        s = synth_serial_with_fronthaul(mu, nF, n, L)
        pairs = np.array(list(product([0, 1], repeat=2 * L)), dtype=np.uint8).reshape(-1, 2, L)
        _, errors = run_delivery_batch(s, pairs, Demand(0, 1))
        assert errors.sum() == 0
