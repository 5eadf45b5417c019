"""Exact rational linear programming.

A two-phase primal simplex with Bland's rule.  The tableau is kept
fraction-free: every entry is an integer and the true tableau equals
``T / D`` for a single positive integer ``D`` (integer-preserving pivoting).
Pivots run on numpy ``int64`` arrays while entries stay small and switch to
Python integers (``dtype=object``) once they could overflow, so results are
exact either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import Infeasible, Unbounded

LE, EQ, GE = "<=", "=", ">="
_SAFE = 1 << 30


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    sense: str
    rhs: Fraction

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * v for a, v in zip(self.coeffs, x)), Fraction(0))
        if self.sense == LE:
            return lhs <= self.rhs
        if self.sense == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


def constraint(coeffs: Iterable, sense: str, rhs) -> Constraint:
    if sense not in (LE, EQ, GE):
        raise ValueError(f"unknown relation {sense!r}")
    return Constraint(tuple(Fraction(c) for c in coeffs), sense, Fraction(rhs))


@dataclass(frozen=True)
class LpSpec:
    """Max-min LP in epigraph form: maximise t with t <= each user-rate form.

    All decision variables are nonnegative.
    """

    num_vars: int
    user_rates: tuple[tuple[Fraction, ...], ...]
    constraints: tuple[Constraint, ...]
    names: tuple[str, ...] = field(default=())

    def feasible(self, x: Sequence[Fraction]) -> bool:
        return all(v >= 0 for v in x) and all(c.holds(x) for c in self.constraints)

    def objective(self, x: Sequence[Fraction]) -> Fraction:
        return min(sum((a * v for a, v in zip(r, x)), Fraction(0)) for r in self.user_rates)


@dataclass(frozen=True)
class LpResult:
    value: Fraction
    x: tuple[Fraction, ...]


def _lcm_den(values: Iterable[Fraction]) -> int:
    m = 1
    for v in values:
        m = math.lcm(m, v.denominator)
    return m


class _Tableau:
    """Integer tableau with common denominator ``D``."""

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.T = np.array(rows, dtype=np.int64)
        self.D = 1
        self.basis = basis
        self._wide = False
        self._check()

    def _check(self) -> None:
        if not self._wide and self.T.size and int(np.abs(self.T).max()) >= _SAFE:
            self.T = self.T.astype(object)
            self._wide = True

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        p = T[r, c]
        col = T[:, c].copy()
        prow = T[r].copy()
        if self._wide:
            T = (T * p - np.outer(col, prow)) // self.D
        else:
            if abs(int(self.D)) >= _SAFE:
                T = T.astype(object)
                self._wide = True
                col = col.astype(object)
                prow = prow.astype(object)
            T = (T * p - np.outer(col, prow)) // self.D
        T[r] = prow
        self.D = p
        if self.D < 0:
            T = -T
            self.D = -self.D
        self.T = T
        self.basis[r] = c
        self._check()

    def entering(self, zrow: int, allowed: int) -> int | None:
        row = self.T[zrow, :allowed]
        neg = np.flatnonzero(row < 0)
        return int(neg[0]) if neg.size else None

    def leaving(self, c: int, nrows: int) -> int | None:
        T = self.T
        colv = T[:nrows, c]
        cand = np.flatnonzero(colv > 0)
        if not cand.size:
            return None
        best = None
        bnum = bden = 0
        for i in cand:
            i = int(i)
            num, den = int(T[i, -1]), int(colv[i])
            if best is None:
                best, bnum, bden = i, num, den
                continue
            lhs, rhs = num * bden, bnum * den
            if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                best, bnum, bden = i, num, den
        return best


def _run(tab: _Tableau, zrow: int, nrows: int, allowed: int) -> None:
    while True:
        c = tab.entering(zrow, allowed)
        if c is None:
            return
        r = tab.leaving(c, nrows)
        if r is None:
            raise Unbounded("objective is unbounded")
        tab.pivot(r, c)


def solve_lp(objective: Sequence, constraints: Sequence[Constraint], maximize: bool = True) -> LpResult:
    """Optimise ``objective . x`` over ``x >= 0`` subject to ``constraints``."""
    n = len(objective)
    c = [Fraction(v) for v in objective]
    if not maximize:
        c = [-v for v in c]
    rows: list[tuple[list[int], int, int]] = []  # coefficients, slack sign, rhs
    for con in constraints:
        if len(con.coeffs) != n:
            raise ValueError("constraint width does not match objective")
        scale = _lcm_den([*con.coeffs, con.rhs])
        a = [int(v * scale) for v in con.coeffs]
        b = int(con.rhs * scale)
        slack = {LE: 1, GE: -1, EQ: 0}[con.sense]
        if b < 0:
            a, b, slack = [-v for v in a], -b, -slack
        rows.append((a, slack, b))

    n_slack = sum(1 for _, s, _ in rows if s)
    art_rows = [i for i, (_, s, _) in enumerate(rows) if s != 1]
    n_art = len(art_rows)
    width = n + n_slack + n_art + 1
    m = len(rows)

    body: list[list[int]] = []
    basis: list[int] = []
    k_slack, k_art = n, n + n_slack
    for i, (a, s, b) in enumerate(rows):
        line = a + [0] * (width - n)
        if s:
            line[k_slack] = s
            if s == 1:
                basis.append(k_slack)
            k_slack += 1
        if s != 1:
            line[k_art] = 1
            basis.append(k_art)
            k_art += 1
        line[-1] = b
        body.append(line)

    cscale = _lcm_den(c)
    zline = [-int(v * cscale) for v in c] + [0] * (width - n)
    wline = [0] * width
    for i in art_rows:
        for j in range(width):
            if j < n + n_slack or j == width - 1:
                wline[j] -= body[i][j]

    tab = _Tableau(body + [zline, wline], basis)
    zrow, wrow = m, m + 1
    n_real = n + n_slack

    if n_art:
        _run(tab, wrow, m, n_real)
        if tab.T[wrow, -1] < 0:
            raise Infeasible("constraints admit no nonnegative solution")
        keep = list(range(m))
        for i in range(m):
            if tab.basis[i] >= n_real:
                nz = np.flatnonzero(tab.T[i, :n_real] != 0)
                if nz.size:
                    tab.pivot(i, int(nz[0]))
                else:
                    keep.remove(i)
        cols = list(range(n_real)) + [width - 1]
        tab.T = tab.T[keep + [zrow]][:, cols]
        tab.basis = [tab.basis[i] for i in keep]
        m = len(keep)
        zrow = m

    _run(tab, zrow, m, n_real)
    D = int(tab.D)
    x = [Fraction(0)] * n
    for i, j in enumerate(tab.basis):
        if j < n:
            x[j] = Fraction(int(tab.T[i, -1]), D)
    value = Fraction(int(tab.T[zrow, -1]), D * cscale)
    return LpResult(value if maximize else -value, tuple(x))


def solve_maximin(spec: LpSpec) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Maximise min over user rates; returns the optimum and a basic optimal vertex."""
    n = spec.num_vars
    cons = [constraint((*con.coeffs, 0), con.sense, con.rhs) for con in spec.constraints]
    for rate in spec.user_rates:
        cons.append(constraint((*(-a for a in rate), 1), LE, 0))
    res = solve_lp([0] * n + [1], cons)
    return res.value, res.x[:n]


def lattice_point(spec: LpSpec, target: Fraction, scale: int, max_nodes: int = 200) -> tuple[Fraction, ...] | None:
    """Find a feasible x with objective >= target and every ``scale * x_i`` integral.

    Depth-first branch and bound on the scaled problem; returns None when no
    such point exists or the node budget runs out.
    """
    n = spec.num_vars
    base = [constraint(con.coeffs, con.sense, con.rhs * scale) for con in spec.constraints]
    base += [constraint([-a for a in rate], LE, -target * scale) for rate in spec.user_rates]
    stack: list[list[Constraint]] = [[]]
    nodes = 0
    while stack and nodes < max_nodes:
        extra = stack.pop()
        nodes += 1
        try:
            res = solve_lp([0] * n, base + extra)
        except Infeasible:
            continue
        frac = next((i for i, v in enumerate(res.x) if v.denominator != 1), None)
        if frac is None:
            return tuple(v / scale for v in res.x)
        v = res.x[frac]
        unit = [0] * n
        unit[frac] = 1
        stack.append(extra + [constraint(unit, GE, math.ceil(v))])
        stack.append(extra + [constraint(unit, LE, math.floor(v))])
    return None
