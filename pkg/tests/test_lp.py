"""The exact simplex against a floating-point reference on random instances."""

import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from fran_dtb.errors import Infeasible, Unbounded
from fran_dtb.lp import EQ, GE, LE, LpSpec, constraint, lattice_point, solve_lp, solve_maximin


def test_small_max():
    cons = [constraint([1, 0], LE, 2), constraint([-1, 1], LE, 0), constraint([1, 1], LE, 2)]
    res = solve_lp([1, 1], cons)
    assert res.value == 2


def test_min_with_equality_and_ge():
    cons = [constraint([1, 1], EQ, 5), constraint([1, 0], GE, 2)]
    assert solve_lp([1, 0], cons, maximize=False).value == 2
    assert solve_lp([1, 2], cons).value == 8


def test_infeasible_and_unbounded():
    with pytest.raises(Infeasible):
        solve_lp([1], [constraint([1], LE, 1), constraint([1], GE, 2)])
    with pytest.raises(Unbounded):
        solve_lp([1, 0], [constraint([0, 1], LE, 1)])


def test_degenerate_problem_terminates():
    # a classic cycling-prone instance; Bland's rule must finish
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    cons = [
        constraint([Fraction(1, 4), -60, Fraction(-1, 25), 9], LE, 0),
        constraint([Fraction(1, 2), -90, Fraction(-1, 50), 3], LE, 0),
        constraint([0, 0, 1, 0], LE, 1),
    ]
    assert solve_lp(c, cons).value == Fraction(1, 20)


@pytest.mark.parametrize("seed", range(40))
def test_random_against_float_reference(seed):
    rng = random.Random(seed)
    nv, nc = rng.randint(2, 6), rng.randint(2, 7)
    A = [[rng.randint(-3, 6) for _ in range(nv)] for _ in range(nc)]
    b = [rng.randint(0, 12) for _ in range(nc)]
    A.append([1] * nv)
    b.append(20)
    c = [rng.randint(-2, 5) for _ in range(nv)]
    ref = linprog([-v for v in c], A_ub=A, b_ub=b, bounds=[(0, None)] * nv, method="highs")
    res = solve_lp(c, [constraint(r, LE, v) for r, v in zip(A, b)])
    assert ref.status == 0
    assert float(res.value) == pytest.approx(-ref.fun, abs=1e-7)
    assert all(constraint(r, LE, v).holds(res.x) for r, v in zip(A, b))


def test_maximin_and_lattice_point():
    # two users share a budget of 5 units; rates are x0 and x1
    spec = LpSpec(2, ((1, 0), (0, 1)), (constraint([1, 1], LE, 5),))
    opt, x = solve_maximin(spec)
    assert opt == Fraction(5, 2)
    assert lattice_point(spec, opt, 1) is None
    pt = lattice_point(spec, opt, 2)
    assert pt is not None and spec.feasible(pt) and spec.objective(pt) == opt
    assert all((2 * v).denominator == 1 for v in pt)


def test_large_entries_switch_to_python_ints():
    big = 10 ** 12
    res = solve_lp([1, 1], [constraint([big, 1], LE, big + 7), constraint([1, big], LE, big + 3)])
    x = np.array([float(v) for v in res.x])
    assert res.value == sum(res.x) and x.min() >= 0
