"""Grid-wide optimality sweeps and the rate-table oracle checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import UnreachableUser
from .grid import GRID_MAX, NF_MAX, points
from .ldm import INF, ChannelParams, make_channel
from .rates import (
    Corner,
    check_parallel,
    check_serial,
    corner_mu,
    parallel_rate_lp,
    serial_rate_lp,
    table_columns,
)
from .sim import DeliveryMode, Verdict, verify_optimality


def _inv(L):
    return INF if L == 0 else 1 / L


def grid_failures(top: int = GRID_MAX, nf_top: int = NF_MAX) -> Iterator[str]:
    """Every grid point whose certificate is not tight, as a readable line.

    At nF = 0 the serial check also compares against 1/L̄* of the plain
    cache-only LP.
    """
    for parallel in (False, True):
        mode = DeliveryMode.Parallel if parallel else DeliveryMode.Serial
        for mu, nF, n in points(top, nf_top, parallel):
            cert = verify_optimality(mu, nF, n, mode)
            if cert.verdict is not Verdict.Tight:
                yield f"{mode.value} mu={mu} nF={nF} n={n}: {cert.details}"
            elif not parallel and nF == 0:
                ach = _inv(serial_rate_lp(mu, n).Lbar)
                if ach != cert.closed_form:
                    yield f"serial mu={mu} nF=0 n={n}: cache-only LP gives {ach}"


@dataclass(frozen=True)
class TableCheck:
    corner: Corner
    label: str
    n: ChannelParams
    nF: Fraction
    violations: tuple[str, ...]
    table_value: Fraction
    lp_value: Fraction

    @property
    def ok(self) -> bool:
        return not self.violations and self.table_value == self.lp_value

    def describe(self) -> str:
        status = "ok" if self.ok else "MISMATCH"
        extra = f" violations={list(self.violations)}" if self.violations else ""
        return f"{self.label} n={self.n} nF={self.nF}: table {self.table_value} vs LP {self.lp_value} {status}{extra}"


def _is_parallel(corner: Corner) -> bool:
    return corner in (Corner.A1_par, Corner.A2_par)


def check_column(corner: Corner, label: str, build, n: ChannelParams, nF: Fraction) -> TableCheck:
    alloc = build()
    if _is_parallel(corner):
        bad = check_parallel(alloc, 0, nF, n)
        return TableCheck(corner, label, n, nF, tuple(bad), alloc.Ltilde, parallel_rate_lp(0, nF, n).Ltilde)
    mu = corner_mu(corner, n)
    bad = check_serial(alloc, mu, n)
    return TableCheck(corner, label, n, nF, tuple(bad), alloc.Lbar, serial_rate_lp(mu, n).Lbar)


def check_point(corner: Corner, n, nF=0) -> list[TableCheck]:
    """All columns of a table whose regime contains n."""
    n = n if isinstance(n, ChannelParams) else make_channel(*n)
    nF = Fraction(nF)
    return [check_column(corner, label, build, n, nF) for label, ok, build in table_columns(corner, n, nF) if ok]


def sample_tables(per_column: int = 50, top: int = 12, seed: int = 0, max_draws: int = 200000) -> dict[str, list[TableCheck]]:
    """Instantiate every table column on random channels inside its regime."""
    rng = random.Random(seed)
    found: dict[str, list[TableCheck]] = {}
    # two probe points that switch on the nF-dependent tables, so every label is listed
    for corner in Corner:
        for label, _, _ in table_columns(corner, (1, 1, 1), 0) + table_columns(corner, (1, 0, 1), 1):
            found.setdefault(label, [])
    draws = 0
    while draws < max_draws and any(len(v) < per_column for v in found.values()):
        draws += 1
        try:
            n = make_channel(*(rng.randint(0, top) for _ in range(3)))
        except UnreachableUser:
            continue
        for corner in Corner:
            nF = Fraction(rng.randint(0, top)) if _is_parallel(corner) else Fraction(0)
            for label, ok, build in table_columns(corner, n, nF):
                if not ok:
                    continue
                bucket = found.setdefault(label, [])
                if len(bucket) < per_column:
                    bucket.append(check_column(corner, label, build, n, nF))
    return found
