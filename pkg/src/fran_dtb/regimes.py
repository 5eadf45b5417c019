"""Closed-form delivery time per bit, regime classes and threshold quantities."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ldm import INF, ChannelParams, as_channel, rat, ratio

Term = tuple[str, object]


class BroadcastCond(enum.Enum):
    I0 = "I0"
    I0C = "I0C"
    I1 = "I1"
    I1C = "I1C"


class Crosslink(enum.Enum):
    SCL = "SCL"
    WCL = "WCL"


class Klass(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class RegimeClass:
    klass: Klass
    crosslink: Crosslink

    def __str__(self) -> str:
        return f"Class {self.klass.value}, {self.crosslink.value}"


@dataclass(frozen=True)
class Thresholds:
    delta_lb_prime: Fraction
    delta_lb_dprime: Fraction
    mu_prime: Fraction
    mu_dprime: Optional[Fraction]
    mu_tprime: Optional[Fraction]
    mu_prime_P: Fraction
    mu_dprime_P: Optional[Fraction]
    mu_tprime_P: Optional[Fraction]
    nF_IM: Fraction
    nF_max: Fraction
    serial_nF_cuts: tuple[int, int]


def clamp01(x: Fraction) -> Fraction:
    return min(max(x, Fraction(0)), Fraction(1))


def _cond_preds(n: ChannelParams):
    a, b, c = n.n
    return (
        (BroadcastCond.I0, 2 * c >= b >= c),
        (BroadcastCond.I0C, b >= 2 * c),
        (BroadcastCond.I1, 2 * b >= c >= b),
        (BroadcastCond.I1C, c >= 2 * b),
    )


def admissible_conditions(n) -> list[BroadcastCond]:
    return [tag for tag, ok in _cond_preds(as_channel(n)) if ok]


def broadcast_condition(n) -> BroadcastCond:
    # predicate order I0, I0C, I1, I1C settles boundary points
    return admissible_conditions(n)[0]


def broadcast_dtb(n):
    n = as_channel(n)
    _, b, c = n.n
    return max(Fraction(2, max(b, c)), ratio(1, b), Fraction(1, c))


def broadcast_dtb_for_condition(n, tag: BroadcastCond):
    """Per-condition simplification of the broadcast DTB."""
    n = as_channel(n)
    _, b, c = n.n
    return {
        BroadcastCond.I0: ratio(2, b),
        BroadcastCond.I0C: Fraction(1, c),
        BroadcastCond.I1: Fraction(2, c),
        BroadcastCond.I1C: ratio(1, b),
    }[tag]


def wireless_bottleneck(n) -> Fraction:
    n = as_channel(n)
    a, b, c = n.n
    return max(Fraction(1, c), Fraction(1, max(a, b)), Fraction(2, max(a + c, b)))


def delta_dprime(n) -> Fraction:
    """max{1/(nd3-nd2), wireless bottleneck}; equals the bottleneck when nd3 <= nd2."""
    n = as_channel(n)
    d1 = wireless_bottleneck(n)
    if n.nd3 > n.nd2:
        return max(Fraction(1, n.nd3 - n.nd2), d1)
    return d1


def crosslink(n) -> Crosslink:
    n = as_channel(n)
    return Crosslink.SCL if n.nd2 >= n.nd3 else Crosslink.WCL


def _class_preds(n: ChannelParams):
    a, b, c = n.n
    d1 = wireless_bottleneck(n)
    i0 = 2 * c >= b >= c
    i0c = b >= 2 * c
    i1 = 2 * b >= c >= b
    i1c = c >= 2 * b
    inv_gap = ratio(1, c - b) if c > b else None
    inv_b = ratio(1, b)
    return (
        (Klass.I, (i0 and a + c >= b) or i1),
        (Klass.II, i1c and inv_gap is not None and inv_gap >= d1 and inv_b >= d1),
        (Klass.III, i1c and inv_gap is not None and inv_gap <= d1 and inv_b >= d1),
        (Klass.IV, i0c or a + c <= b or (i1c and inv_b <= d1)),
    )


def admissible_classes(n) -> list[Klass]:
    preds = _class_preds(as_channel(n))
    return [k for k, ok in preds if ok]


def classify(n) -> RegimeClass:
    n = as_channel(n)
    return RegimeClass(admissible_classes(n)[0], crosslink(n))


def thresholds(n, nF=0) -> Thresholds:
    n = as_channel(n)
    a, b, c = n.n
    nF = rat(nF)
    m = max(b, c)
    d1 = wireless_bottleneck(n)
    mu_dp = clamp01(Fraction(c - 2 * b, c - b)) if c > b else None
    mu_tp = clamp01(Fraction(a - b, a)) if a > 0 else None
    mu_dp_P = clamp01((c - 2 * b - nF) / (c - b)) if c > b else None
    mu_tp_P = clamp01((a - b - nF) / a) if a > 0 else None
    nf_max = max(2 / d1 - m, 1 / d1 - b, Fraction(0))
    return Thresholds(
        delta_lb_prime=d1,
        delta_lb_dprime=delta_dprime(n),
        mu_prime=clamp01(2 - m * d1),
        mu_dprime=mu_dp,
        mu_tprime=mu_tp,
        mu_prime_P=clamp01(2 - (nF + m) * d1),
        mu_dprime_P=mu_dp_P,
        mu_tprime_P=mu_tp_P,
        nF_IM=Fraction(c - 2 * b),
        nF_max=nf_max,
        serial_nF_cuts=(b, m),
    )


def nf_max(n) -> Fraction:
    n = as_channel(n)
    d1 = wireless_bottleneck(n)
    return max(2 / d1 - max(n.nd2, n.nd3), 1 / d1 - n.nd2, Fraction(0))


def _check_inputs(mu, nF):
    mu, nF = rat(mu), rat(nF)
    if not 0 <= mu <= 1:
        raise ValueError("fractional cache size must lie in [0, 1]")
    if nF < 0:
        raise ValueError("fronthaul capacity must be nonnegative")
    return mu, nF


def dtb_serial_terms(mu, nF, n) -> list[Term]:
    """The terms whose maximum is the serial DTB (corollary split in the medium range)."""
    mu, nF = _check_inputs(mu, nF)
    n = as_channel(n)
    _, b, c = n.n
    m = max(b, c)
    d1 = wireless_bottleneck(n)
    if nF <= b:
        return [("(1-mu)/nd2", ratio(1 - mu, b)), ("(2-mu)/max(nd2,nd3)", Fraction(2 - mu) / m), ("bottleneck", d1)]
    if nF <= m:
        # here nd2 < nF <= nd3, so nd3 > nd2 and the condition is I1 or I1C
        terms: list[Term] = [("(2-mu)/nd3", Fraction(2 - mu) / c), ("bottleneck", d1)]
        if broadcast_condition(n) is BroadcastCond.I1C:
            mu_dp = Fraction(c - 2 * b, c - b)
            if mu <= mu_dp:
                lin = (1 - mu) / nF + (1 - b / nF) * delta_dprime(n)
                terms.insert(0, ("(1-mu)/nF+(1-nd2/nF)D''", lin))
        return terms
    return [
        ("(2-mu)/nF+(1-max/nF)D'", (2 - mu) / nF + (1 - m / nF) * d1),
        ("(1-mu)/nF+(1-nd2/nF)D'", (1 - mu) / nF + (1 - b / nF) * d1),
        ("bottleneck", d1),
    ]


def _max_terms(terms: list[Term]):
    return max(v for _, v in terms)


def binding_term(terms: list[Term]) -> str:
    top = _max_terms(terms)
    return next(name for name, v in terms if v == top)


def dtb_serial(mu, nF, n):
    return _max_terms(dtb_serial_terms(mu, nF, n))


def dtb_serial_theorem(mu, nF, n):
    """The three-branch closed form with the Δ'' term in the whole medium range."""
    mu, nF = _check_inputs(mu, nF)
    n = as_channel(n)
    _, b, c = n.n
    m = max(b, c)
    d1 = wireless_bottleneck(n)
    if nF <= b:
        return max(ratio(1 - mu, b), (2 - mu) / m, d1)
    if nF <= m:
        return max((1 - mu) / nF + (1 - b / nF) * delta_dprime(n), (2 - mu) / m, d1)
    return max((2 - mu) / nF + (1 - m / nF) * d1, (1 - mu) / nF + (1 - b / nF) * d1, d1)


def dtb_serial_for_class(mu, nF, n, klass: Klass):
    """Class-specific simplification of the serial DTB."""
    mu, nF = _check_inputs(mu, nF)
    n = as_channel(n)
    _, b, c = n.n
    m = max(b, c)
    d1 = wireless_bottleneck(n)
    if klass is Klass.I:
        if nF <= m:
            return max((2 - mu) / m, d1)
        return max((2 - mu) / nF + (1 - m / nF) * d1, d1)
    if klass is Klass.II:
        if nF <= b:
            return max(ratio(1 - mu, b), (2 - mu) / c, d1)
        if nF <= c:
            dd = max(Fraction(1, c - b), d1)
            return max((1 - mu) / nF + (1 - b / nF) * dd, (2 - mu) / c, d1)
        return max((2 - mu) / nF + (1 - c / nF) * d1, d1)
    if klass is Klass.III:
        if nF <= b:
            return max(ratio(1 - mu, b), d1)
        return max((1 - mu) / nF + (1 - b / nF) * d1, d1)
    return d1


def dtb_parallel_terms(mu, nF, n) -> list[Term]:
    mu, nF = _check_inputs(mu, nF)
    n = as_channel(n)
    _, b, c = n.n
    return [
        ("(1-mu)/(nF+nd2)", ratio(1 - mu, nF + b)),
        ("(2-mu)/(nF+max(nd2,nd3))", (2 - mu) / (nF + max(b, c))),
        ("bottleneck", wireless_bottleneck(n)),
    ]


def dtb_parallel(mu, nF, n):
    return _max_terms(dtb_parallel_terms(mu, nF, n))


def dtb_parallel_for_class(mu, nF, n, klass: Klass):
    mu, nF = _check_inputs(mu, nF)
    n = as_channel(n)
    _, b, c = n.n
    m = max(b, c)
    d1 = wireless_bottleneck(n)
    top = nf_max(n)
    if klass is Klass.IV or nF >= top:
        return d1
    if klass is Klass.I:
        return max((2 - mu) / (nF + m), d1)
    if klass is Klass.II:
        if nF <= c - 2 * b:
            return max(ratio(1 - mu, nF + b), (2 - mu) / (nF + c), d1)
        return max((2 - mu) / (nF + c), d1)
    return max(ratio(1 - mu, nF + b), d1)


def is_finite(x) -> bool:
    return x != INF
