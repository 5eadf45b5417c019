"""The evaluation grid shared by the certificate sweep, the CLI and the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterator

from .errors import UnreachableUser
from .ldm import ChannelParams, make_channel
from .regimes import thresholds

GRID_MAX = 8
NF_MAX = 10
MU_STEPS = 8


def channels(top: int = GRID_MAX) -> list[ChannelParams]:
    out = []
    for a, b, c in product(range(top + 1), repeat=3):
        try:
            out.append(make_channel(a, b, c))
        except UnreachableUser:
            continue
    return out


def mu_grid(steps: int = MU_STEPS) -> list[Fraction]:
    return [Fraction(k, steps) for k in range(steps + 1)]


def corner_mus(n, nF=0, parallel: bool = False) -> list[Fraction]:
    th = thresholds(n, nF)
    if parallel:
        vals = [th.mu_prime_P, th.mu_dprime_P, th.mu_tprime_P]
    else:
        vals = [th.mu_prime, th.mu_dprime, th.mu_tprime]
    return [v for v in vals if v is not None]


def mus_for(n, nF=0, parallel: bool = False, steps: int = MU_STEPS) -> list[Fraction]:
    """The regular mu grid plus the exact corner values, sorted and deduplicated."""
    return sorted(set(mu_grid(steps)) | set(corner_mus(n, nF, parallel)))


def points(top: int = GRID_MAX, nf_top: int = NF_MAX, parallel: bool = False) -> Iterator[tuple[Fraction, int, ChannelParams]]:
    for n in channels(top):
        for nF in range(nf_top + 1):
            for mu in mus_for(n, nF, parallel):
                yield mu, nF, n
