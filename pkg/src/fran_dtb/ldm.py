"""Linear deterministic channel model of the two-transmitter, two-user network.

The eNB (x2) reaches U1 over nd2 levels and U2 over nd3 levels; the HeNB
(x1) reaches U1 only, over nd1 levels.  Bit vectors are indexed top-down:
index 0 is the most significant level of the stack.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShiftRangeError, SizeMismatch, UnreachableUser

Rat = Fraction
INF = math.inf


def rat(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted where exact rationals are required")
    return Fraction(value)


def ratio(num, den):
    """``num / den`` that tolerates a zero link strength.

    A zero denominator means the corresponding link carries nothing: the term
    is unbounded when something must still cross it, and vacuous otherwise.
    """
    if den == 0:
        return INF if num > 0 else Fraction(0)
    return Fraction(num) / Fraction(den)


class QMode(enum.Enum):
    Wireless = "wireless"
    WithFronthaul = "with_fronthaul"


@dataclass(frozen=True)
class ChannelParams:
    nd1: int
    nd2: int
    nd3: int
    nF: int = 0
    q: int = 0

    @property
    def n(self) -> tuple[int, int, int]:
        return (self.nd1, self.nd2, self.nd3)

    def __str__(self) -> str:
        return f"({self.nd1},{self.nd2},{self.nd3})"


def make_channel(nd1: int, nd2: int, nd3: int, nF: int = 0, q_mode: QMode = QMode.Wireless) -> ChannelParams:
    values = (nd1, nd2, nd3, nF)
    if any(not isinstance(v, int) or isinstance(v, bool) for v in values):
        raise TypeError("channel strengths must be integers")
    if min(values) < 0:
        raise ValueError("channel strengths must be nonnegative")
    if nd3 == 0 or max(nd1, nd2) == 0:
        raise UnreachableUser(f"user unreachable for n=({nd1},{nd2},{nd3})")
    q = max(nd1, nd2, nd3)
    if q_mode is QMode.WithFronthaul:
        q = max(q, nF)
    return ChannelParams(nd1, nd2, nd3, nF, q)


def as_channel(n) -> ChannelParams:
    if isinstance(n, ChannelParams):
        return n
    return make_channel(*n)


def _ceil_log2(x: float) -> int:
    if x <= 1:
        return 0
    r = round(x)
    if math.isclose(x, r, rel_tol=1e-9):
        # exact integer gains, possibly with float noise from |h|**2
        return (r - 1).bit_length()
    return math.ceil(math.log2(x))


def gaussian_to_ldm(P: float, h: Sequence[complex], CF: float = 0.0) -> ChannelParams:
    """Integer LDM strengths ``ceil(log2(P |h_m|^2))`` and ``nF = ceil(CF)``."""
    if P <= 0:
        raise ValueError("transmit power must be positive")
    if len(h) != 3:
        raise ValueError("expected three channel gains")
    if CF < 0:
        raise ValueError("fronthaul capacity must be nonnegative")
    nd = [_ceil_log2(P * abs(g) ** 2) for g in h]
    return make_channel(nd[0], nd[1], nd[2], math.ceil(CF))


@dataclass(frozen=True)
class BitVec:
    bits: tuple[int, ...]

    @classmethod
    def of(cls, bits: Iterable[int] | str) -> BitVec:
        if isinstance(bits, str):
            bits = [int(c) for c in bits]
        out = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in out):
            raise ValueError("bits must be 0 or 1")
        return cls(out)

    @classmethod
    def zeros(cls, q: int) -> BitVec:
        return cls((0,) * q)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def __xor__(self, other: BitVec) -> BitVec:
        if len(self) != len(other):
            raise SizeMismatch("bit vectors differ in length")
        return BitVec(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def downshift(x: BitVec, k: int) -> BitVec:
    """Apply ``S^k``: move every level down by k, filling the top with zeros."""
    q = len(x)
    if not 0 <= k <= q:
        raise ShiftRangeError(f"shift {k} outside [0, {q}]")
    return BitVec((0,) * k + x.bits[: q - k])


def channel_outputs(x1: BitVec, x2: BitVec, n: ChannelParams) -> tuple[BitVec, BitVec]:
    q = n.q
    if len(x1) != q or len(x2) != q:
        raise SizeMismatch(f"inputs must have length q={q}")
    y1 = downshift(x1, q - n.nd1) ^ downshift(x2, q - n.nd2)
    y2 = downshift(x2, q - n.nd3)
    return y1, y2
