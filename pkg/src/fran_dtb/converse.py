"""Lower bounds on the delivery time per bit."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .ldm import INF, as_channel, rat, ratio
from .regimes import BroadcastCond, broadcast_condition, delta_dprime, wireless_bottleneck


@dataclass(frozen=True)
class ConverseLpSolution:
    delta_E: object
    delta_F: object
    total: object


def _prep(mu, nF):
    mu, nF = rat(mu), rat(nF)
    if not 0 <= mu <= 1:
        raise ValueError("fractional cache size must lie in [0, 1]")
    if nF < 0:
        raise ValueError("fronthaul capacity must be nonnegative")
    return mu, nF


def lb_serial_cache_only(mu, n):
    mu, _ = _prep(mu, 0)
    n = as_channel(n)
    _, b, c = n.n
    return max(wireless_bottleneck(n), ratio(1 - mu, b), (2 - mu) / max(b, c))


def _converse_rows(mu: Fraction, nF: Fraction, n) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Rows (a, b, h) meaning a*E + b*F >= h, scaled so a zero nd2 stays finite."""
    _, b, c = n.n
    m = max(b, c)
    return [
        (Fraction(m), nF, 2 - mu),
        (Fraction(b), nF, 1 - mu),
        (Fraction(1), Fraction(0), wireless_bottleneck(n)),
        (Fraction(0), Fraction(1), Fraction(0)),
    ]


def lb_serial_lp(mu, nF, n) -> ConverseLpSolution:
    """Two-variable converse LP solved by exact vertex enumeration.

    Among optimal vertices the one with the smallest fronthaul share is
    reported, so a degenerate fronthaul direction yields delta_F = 0.
    """
    mu, nF = _prep(mu, nF)
    n = as_channel(n)
    rows = _converse_rows(mu, nF, n)
    best = None
    for (a1, b1, h1), (a2, b2, h2) in combinations(rows, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        E = (h1 * b2 - h2 * b1) / det
        F = (a1 * h2 - a2 * h1) / det
        if all(a * E + b * F >= h for a, b, h in rows):
            key = (E + F, F)
            if best is None or key < best[0]:
                best = (key, E, F)
    if best is None:
        return ConverseLpSolution(wireless_bottleneck(n), INF, INF)
    _, E, F = best
    return ConverseLpSolution(E, F, E + F)


def lb_serial_corollaries(mu, nF, n):
    """Closed-form converse per fronthaul range: low, medium (I1 / I1C) and high."""
    mu, nF = _prep(mu, nF)
    n = as_channel(n)
    _, b, c = n.n
    m = max(b, c)
    d1 = wireless_bottleneck(n)
    if nF <= b:
        return lb_serial_cache_only(mu, n)
    if nF >= m:
        return max((2 - mu) / nF + (1 - m / nF) * d1, (1 - mu) / nF + (1 - b / nF) * d1, d1)
    # medium range: nd2 < nF < nd3
    bounds = [(2 - mu) / c, d1]
    if broadcast_condition(n) is BroadcastCond.I1C and mu <= Fraction(c - 2 * b, c - b):
        bounds.append((1 - mu) / nF + (1 - b / nF) * delta_dprime(n))
    return max(bounds)


def lb_parallel(mu, nF, n):
    mu, nF = _prep(mu, nF)
    n = as_channel(n)
    _, b, c = n.n
    return max(wireless_bottleneck(n), ratio(1 - mu, nF + b), (2 - mu) / (nF + max(b, c)))
