"""Achievability side: rate allocations, the max-min LPs and the corner rate tables.

Signal layout used throughout (top level first):

* eNB  ``x2 = [u_c | v_c | v_IN | w_1p | 0_l1]``
* HeNB ``x1 = [u_2p | 0_l4 | 0_l3 | n_IN | 0_l2]``

``w_1p`` goes to U1 in the strong cross-link regime (nd2 >= nd3) and to U2
otherwise.  ``n_IN = v_IN xor u_IN`` lands on top of ``v_IN`` at U1, which
leaves ``u_IN`` there.  The zero paddings l1 and l2 are implied by the fill
up to ``q`` and are not decision variables of the LPs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .errors import InsufficientFronthaul, RegimeNotCovered
from .ldm import INF, ChannelParams, as_channel, rat
from .lp import EQ, GE, LE, LpSpec, constraint, solve_lp, solve_maximin
from .regimes import Crosslink, crosslink, nf_max, thresholds

ZERO = Fraction(0)


def pos(x) -> Fraction:
    return max(Fraction(x), ZERO)


@dataclass(frozen=True)
class RateAllocSerial:
    R1p_w: Fraction
    R2p_u: Fraction
    Rc_u: Fraction
    Rc_v: Fraction
    RIN_v: Fraction
    RIN_n: Fraction
    l1: Fraction
    l2: Fraction
    l3: Fraction
    l4: Fraction
    Lbar: Fraction
    crosslink: Crosslink

    def user_rates(self) -> tuple[Fraction, Fraction]:
        u1 = self.R2p_u + self.Rc_u + self.RIN_n
        u2 = self.Rc_v + self.RIN_v
        if self.crosslink is Crosslink.SCL:
            return u1 + self.R1p_w, u2
        return u1, u2 + self.R1p_w

    @property
    def henb_active(self) -> bool:
        return self.R2p_u + self.RIN_n > 0

    def components(self) -> dict[str, Fraction]:
        return {k: getattr(self, k) for k in ("R1p_w", "R2p_u", "Rc_u", "Rc_v", "RIN_v", "RIN_n", "l1", "l2", "l3", "l4")}


@dataclass(frozen=True)
class RateAllocParallel:
    R1c_u: tuple[Fraction, Fraction]
    R2c_u: tuple[Fraction, Fraction]
    R2p_u: tuple[Fraction, Fraction]
    RIN_v: tuple[Fraction, Fraction]
    R1c_v: tuple[Fraction, Fraction]
    R2c_v: tuple[Fraction, Fraction]
    RIN_n: tuple[Fraction, Fraction]
    l2: tuple[Fraction, Fraction]
    l3: tuple[Fraction, Fraction]
    l4: tuple[Fraction, Fraction]
    R1p_w: Fraction
    l1: Fraction
    Ltilde: Fraction
    crosslink: Crosslink

    def user_rates(self) -> tuple[Fraction, Fraction]:
        u1 = sum(self.R1c_u[t] + self.R2c_u[t] + self.RIN_n[t] + self.R2p_u[t] for t in (0, 1))
        u2 = sum(self.RIN_v[t] + self.R1c_v[t] + self.R2c_v[t] for t in (0, 1))
        if self.crosslink is Crosslink.SCL:
            return u1 + 2 * self.R1p_w, u2
        return u1, u2 + 2 * self.R1p_w

    def instant(self, t: int) -> RateAllocSerial:
        """The stack used at one time instant, with both common parts merged."""
        return RateAllocSerial(
            R1p_w=self.R1p_w,
            R2p_u=self.R2p_u[t],
            Rc_u=self.R1c_u[t] + self.R2c_u[t],
            Rc_v=self.R1c_v[t] + self.R2c_v[t],
            RIN_v=self.RIN_v[t],
            RIN_n=self.RIN_n[t],
            l1=self.l1,
            l2=self.l2[t],
            l3=self.l3[t],
            l4=self.l4[t],
            Lbar=self.Ltilde / 2,
            crosslink=self.crosslink,
        )


@dataclass(frozen=True)
class FronthaulAlloc:
    """Serial delivery with fronthaul: a cache-only stack run at cache size ``mu_G``.

    The HeNB is missing ``deficit`` bits per file bit, which the cloud sends
    ahead of the wireless phase.
    """

    alloc: RateAllocSerial
    mu: Fraction
    nF: Fraction
    mu_G: Fraction
    deficit: Fraction
    dtb_E: object
    dtb_F: object

    @property
    def dtb(self):
        return self.dtb_E + self.dtb_F


# -- exact feasibility re-checks ------------------------------------------------


def _stack_violations(a: RateAllocSerial, n: ChannelParams, budget: Fraction, tag: str = "") -> list[str]:
    a1, b, c = n.n
    q = n.q
    scl = a.crosslink is Crosslink.SCL
    top = a.Rc_u + a.Rc_v + a.RIN_v
    out = []
    checks = [
        ("nonnegative", all(v >= 0 for v in a.components().values())),
        ("eNB stack fits", a.l1 + a.R1p_w + top <= q),
        ("U2 decodes top-down", top + (0 if scl else a.R1p_w) <= c),
        ("U1 reads eNB levels", top + (a.R1p_w if scl else 0) <= b),
        ("IN pair equal", a.RIN_v == a.RIN_n),
        ("cache budget", a.R2p_u + a.RIN_n <= budget),
    ]
    if a.henb_active:
        checks += [
            ("HeNB stack fits", a.l2 + a.l3 + a.l4 + a.R2p_u + a.RIN_n <= q),
            ("U1 reads HeNB levels", a.l3 + a.l4 + a.R2p_u + a.RIN_n <= a1),
            ("no u2p/uc overlap", a.l4 + a.R2p_u <= pos(a1 - b)),
            ("IN alignment", top + a1 - b == a.l3 + a.l4 + a.RIN_n + a.R2p_u),
        ]
    for name, ok in checks:
        if not ok:
            out.append(name + tag)
    return out


def _layout_ok(cl: Crosslink, n: ChannelParams) -> bool:
    # with nd2 == nd3 both users see the eNB alike and either placement of w_1p works
    return n.nd2 == n.nd3 or cl is crosslink(n)


def check_serial(a: RateAllocSerial, mu, n) -> list[str]:
    """Names of violated conditions (empty when the allocation is feasible)."""
    n = as_channel(n)
    mu = rat(mu)
    out = _stack_violations(a, n, mu * a.Lbar)
    if a.Lbar > min(a.user_rates()):
        out.append("rate target")
    if not _layout_ok(a.crosslink, n):
        out.append("crosslink")
    return out


def check_parallel(a: RateAllocParallel, mu, nF, n) -> list[str]:
    n = as_channel(n)
    mu, nF = rat(mu), rat(nF)
    budget = mu * a.Ltilde / 2 + min(nF, nf_max(n))
    out = []
    for t in (0, 1):
        out += _stack_violations(a.instant(t), n, budget, f" (t{t + 1})")
    if a.Ltilde > min(a.user_rates()):
        out.append("rate target")
    if not _layout_ok(a.crosslink, n):
        out.append("crosslink")
    return out


# -- LP construction -------------------------------------------------------------

_STACK = ("R1p", "R2p", "Rcu", "RIN", "Rcv", "l3", "l4")


class _Builder:
    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        self.index = {k: i for i, k in enumerate(self.names)}
        self.rows = []

    def vec(self, terms: dict) -> list[Fraction]:
        v = [ZERO] * len(self.names)
        for k, c in terms.items():
            v[self.index[k]] += Fraction(c)
        return v

    def add(self, terms: dict, sense: str, rhs) -> None:
        self.rows.append(constraint(self.vec(terms), sense, rhs))


def _stack_rows(bld: _Builder, n: ChannelParams, scl: bool, sfx: str = "", scale: Optional[str] = None, silent: bool = False) -> None:
    """Per-instant conditions; with ``scale`` every constant is multiplied by that variable."""
    a1, b, c = n.n
    q = n.q

    def k(name):
        return name + sfx if name != "R1p" else "R1p"

    def add(terms: dict, sense: str, const) -> None:
        if scale is None:
            bld.add(terms, sense, const)
        else:
            t = dict(terms)
            t[scale] = t.get(scale, 0) - const
            bld.add(t, sense, 0)

    top = {k("Rcu"): 1, k("Rcv"): 1, k("RIN"): 1}
    add({**top, "R1p": 1}, LE, q)
    add({**top, **({} if scl else {"R1p": 1})}, LE, c)
    add({**top, **({"R1p": 1} if scl else {})}, LE, b)
    if silent:
        bld.add({k("R2p"): 1}, EQ, 0)
        bld.add({k("RIN"): 1}, EQ, 0)
        bld.add({k("l3"): 1}, EQ, 0)
        bld.add({k("l4"): 1}, EQ, 0)
        return
    add({k("l3"): 1, k("l4"): 1, k("R2p"): 1, k("RIN"): 1}, LE, min(q, a1))
    add({k("l4"): 1, k("R2p"): 1}, LE, max(a1 - b, 0))
    add({k("Rcu"): 1, k("Rcv"): 1, k("l3"): -1, k("l4"): -1, k("R2p"): -1}, EQ, b - a1)


def _henb_usable(n: ChannelParams) -> bool:
    # the IN alignment needs nd2 - nd1 <= nd3; otherwise the HeNB stays silent
    return n.nd2 <= n.nd1 + n.nd3


def _serial_rates(scl: bool, sfx: str = "") -> tuple[dict, dict]:
    u1 = {"R2p" + sfx: 1, "Rcu" + sfx: 1, "RIN" + sfx: 1}
    u2 = {"Rcv" + sfx: 1, "RIN" + sfx: 1}
    (u1 if scl else u2)["R1p"] = 1
    return u1, u2


def serial_lp_spec(mu, n, cache_cap: Optional[Fraction] = None) -> LpSpec:
    """Serial max-min LP; ``cache_cap`` replaces mu * Lbar by a constant bound."""
    n = as_channel(n)
    mu = rat(mu)
    scl = crosslink(n) is Crosslink.SCL
    bld = _Builder(_STACK)
    silent = not _henb_usable(n)
    _stack_rows(bld, n, scl, silent=silent)
    u1, u2 = _serial_rates(scl)
    if cache_cap is not None:
        bld.add({"R2p": 1, "RIN": 1}, LE, cache_cap)
        return LpSpec(len(_STACK), (tuple(bld.vec(u1)), tuple(bld.vec(u2))), tuple(bld.rows), bld.names)
    for r in (u1, u2):
        # cache budget R2p + RIN <= mu * Lbar, with Lbar = min(R_U1, R_U2)
        t = {"R2p": 1, "RIN": 1}
        for key, v in r.items():
            t[key] = t.get(key, 0) - mu * v
        bld.add(t, LE, 0)
    return LpSpec(len(_STACK), (tuple(bld.vec(u1)), tuple(bld.vec(u2))), tuple(bld.rows), bld.names)


def _serial_alloc(x: dict, n: ChannelParams, Lbar: Fraction) -> RateAllocSerial:
    q = n.q
    top = x["Rcu"] + x["Rcv"] + x["RIN"]
    return RateAllocSerial(
        R1p_w=x["R1p"],
        R2p_u=x["R2p"],
        Rc_u=x["Rcu"],
        Rc_v=x["Rcv"],
        RIN_v=x["RIN"],
        RIN_n=x["RIN"],
        l1=q - top - x["R1p"],
        l2=q - x["l3"] - x["l4"] - x["R2p"] - x["RIN"],
        l3=x["l3"],
        l4=x["l4"],
        Lbar=Lbar,
        crosslink=crosslink(n),
    )


@lru_cache(maxsize=65536)
def _serial_rate_lp(mu: Fraction, n: ChannelParams) -> RateAllocSerial:
    spec = serial_lp_spec(mu, n)
    opt, x = solve_maximin(spec)
    return _serial_alloc(dict(zip(_STACK, x)), n, opt)


def serial_rate_lp(mu, n) -> RateAllocSerial:
    """Cache-only serial LP: the largest per-use symmetric rate L̄*."""
    mu = rat(mu)
    if not 0 <= mu <= 1:
        raise ValueError("fractional cache size must lie in [0, 1]")
    return _serial_rate_lp(mu, as_channel(n))


def inv(x):
    return INF if x == 0 else 1 / x


def serial_fronthaul_lp_spec(mu, nF, n) -> tuple[list[Fraction], LpSpec, tuple[str, ...]]:
    """Per-bit form of the serial scheme with fronthaul.

    Variables are the stack rates per delivered bit, the wireless time per bit
    ``s`` and the fronthauled bits per file bit ``f``.  Minimising
    ``s + f / nF`` covers running any cache-only stack at a larger effective
    cache ``mu + f`` and memory sharing between such stacks.
    """
    n = as_channel(n)
    mu, nF = rat(mu), rat(nF)
    scl = crosslink(n) is Crosslink.SCL
    names = _STACK + ("s", "f")
    bld = _Builder(names)
    silent = not _henb_usable(n)
    _stack_rows(bld, n, scl, scale="s", silent=silent)
    bld.add({"R2p": 1, "RIN": 1, "f": -1}, LE, mu)
    u1, u2 = _serial_rates(scl)
    bld.add(u1, GE, 1)
    bld.add(u2, GE, 1)
    if nF == 0:
        bld.add({"f": 1}, EQ, 0)
    obj = bld.vec({"s": 1, "f": (1 / nF) if nF else 0})
    spec = LpSpec(len(names), (), tuple(bld.rows), names)
    return obj, spec, names


@lru_cache(maxsize=65536)
def _serial_fronthaul_lp(mu: Fraction, nF: Fraction, n: ChannelParams) -> FronthaulAlloc:
    if nF == 0:
        a = _serial_rate_lp(mu, n)
        if a.Lbar == 0:
            raise InsufficientFronthaul(f"no finite delivery time at mu={mu}, nF=0 for {n}")
        return FronthaulAlloc(a, mu, nF, mu, ZERO, 1 / a.Lbar, ZERO)
    obj, spec, names = serial_fronthaul_lp_spec(mu, nF, n)
    res = solve_lp(obj, spec.constraints, maximize=False)
    x = dict(zip(names, res.x))
    s = x["s"]
    Lbar = 1 / s
    rates = {k: x[k] * Lbar for k in _STACK}
    a = _serial_alloc(rates, n, Lbar)
    need = x["R2p"] + x["RIN"]
    deficit = pos(need - mu)
    return FronthaulAlloc(a, mu, nF, max(mu, need), deficit, s, deficit / nF)


def serial_fronthaul_lp(mu, nF, n) -> FronthaulAlloc:
    mu, nF = rat(mu), rat(nF)
    if not 0 <= mu <= 1 or nF < 0:
        raise ValueError("need mu in [0, 1] and nF >= 0")
    return _serial_fronthaul_lp(mu, nF, as_channel(n))


def serial_achievable_dtb(mu, nF, n):
    """Delivery time per bit of the synthesised serial scheme (INF when none exists)."""
    try:
        return serial_fronthaul_lp(mu, nF, n).dtb
    except InsufficientFronthaul:
        return INF


_PAR = ("R1p",) + tuple(f"{k}{t}" for t in (1, 2) for k in ("R2p", "Rcu", "RIN", "Rcv", "l3", "l4"))


def parallel_lp_spec(mu, nF, n, cache_cap: Optional[Fraction] = None) -> LpSpec:
    n = as_channel(n)
    mu, nF = rat(mu), rat(nF)
    scl = crosslink(n) is Crosslink.SCL
    budget = min(nF, nf_max(n))
    bld = _Builder(_PAR)
    silent = not _henb_usable(n)
    for t in ("1", "2"):
        _stack_rows(bld, n, scl, sfx=t, silent=silent)
    u1: dict = {}
    u2: dict = {}
    for t in ("1", "2"):
        a, b = _serial_rates(scl, t)
        for key, v in a.items():
            u1[key] = u1.get(key, 0) + v
        for key, v in b.items():
            u2[key] = u2.get(key, 0) + v
    for t in ("1", "2"):
        if cache_cap is not None:
            bld.add({"R2p" + t: 1, "RIN" + t: 1}, LE, cache_cap)
            continue
        for r in (u1, u2):
            row = {"R2p" + t: 1, "RIN" + t: 1}
            for key, v in r.items():
                row[key] = row.get(key, 0) - mu * v / 2
            bld.add(row, LE, budget)
    return LpSpec(len(_PAR), (tuple(bld.vec(u1)), tuple(bld.vec(u2))), tuple(bld.rows), bld.names)


def _parallel_alloc(x: dict, n: ChannelParams, Lt: Fraction) -> RateAllocParallel:
    q = n.q
    per = {k: tuple(x[f"{k}{t}"] for t in (1, 2)) for k in ("R2p", "Rcu", "RIN", "Rcv", "l3", "l4")}
    zeros = (ZERO, ZERO)
    l2 = tuple(q - per["l3"][t] - per["l4"][t] - per["R2p"][t] - per["RIN"][t] for t in (0, 1))
    l1 = q - x["R1p"] - max(per["Rcu"][t] + per["Rcv"][t] + per["RIN"][t] for t in (0, 1))
    return RateAllocParallel(
        R1c_u=zeros,
        R2c_u=per["Rcu"],
        R2p_u=per["R2p"],
        RIN_v=per["RIN"],
        R1c_v=zeros,
        R2c_v=per["Rcv"],
        RIN_n=per["RIN"],
        l2=l2,
        l3=per["l3"],
        l4=per["l4"],
        R1p_w=x["R1p"],
        l1=l1,
        Ltilde=Lt,
        crosslink=crosslink(n),
    )


@lru_cache(maxsize=65536)
def _parallel_rate_lp(mu: Fraction, budget: Fraction, n: ChannelParams) -> RateAllocParallel:
    spec = parallel_lp_spec(mu, budget, n)
    opt, x = solve_maximin(spec)
    return _parallel_alloc(dict(zip(_PAR, x)), n, opt)


def parallel_rate_lp(mu, nF, n) -> RateAllocParallel:
    """Per-block LP over two channel uses; the block carries L̃* bits per user."""
    mu, nF = rat(mu), rat(nF)
    if not 0 <= mu <= 1 or nF < 0:
        raise ValueError("need mu in [0, 1] and nF >= 0")
    n = as_channel(n)
    # only min(nF, nF_max) enters the LP, so equal budgets share one solve
    return _parallel_rate_lp(mu, min(nF, nf_max(n)), n)


def parallel_achievable_dtb(mu, nF, n):
    Lt = parallel_rate_lp(mu, nF, n).Ltilde
    return INF if Lt == 0 else 2 / Lt


# -- corner rate tables----------------------------------------------------------


class Corner(enum.Enum):
    B1 = "B1"
    B2 = "B2"
    C1 = "C1"
    A1_par = "A1"
    A2_par = "A2"


@dataclass(frozen=True)
class TableColumn:
    corner: Corner
    label: str
    regime: Callable[..., bool]
    build: Callable[..., object]
    mu: Callable[[ChannelParams], Fraction] = field(default=lambda n: ZERO)
    nF_range: Callable[[ChannelParams], tuple[Fraction, Optional[Fraction]]] = field(default=lambda n: (ZERO, None))

    @property
    def parallel(self) -> bool:
        return self.corner in (Corner.A1_par, Corner.A2_par)


def _ser(n, scl, R1p, Rcu, R2p, RIN, Rcv, l1, l2, l3, l4, Lbar, RIN_n=None) -> RateAllocSerial:
    f = Fraction
    return RateAllocSerial(
        R1p_w=f(R1p), R2p_u=f(R2p), Rc_u=f(Rcu), Rc_v=f(Rcv), RIN_v=f(RIN),
        RIN_n=f(RIN if RIN_n is None else RIN_n), l1=f(l1), l2=f(l2), l3=f(l3), l4=f(l4),
        Lbar=f(Lbar), crosslink=Crosslink.SCL if scl else Crosslink.WCL,
    )


def _h(x) -> Fraction:
    return Fraction(x, 2)


def _b2_scl(n: ChannelParams):
    a, b, c = n.n
    return [
        ("B2 SCL nd1+nd3>=nd2>=nd3>=nd1", a + c >= b >= c >= a,
         lambda: _ser(n, True, b - c, _h(c - a), 0, a + c - b, _h(2 * b - a - c), 0, 2 * b - a - c, 0, 0, _h(a + c))),
        ("B2 SCL 2nd3>=nd2>=nd1>=nd3", 2 * c >= b >= a >= c,
         lambda: _ser(n, True, b - c, 0, 0, 2 * c - b, b - c, 0, 2 * b - a - c, a - c, 0, c)),
        ("B2 SCL nd1>=nd2>=nd3, 2nd3>=nd2", a >= b >= c and 2 * c >= b,
         lambda: _ser(n, True, b - c, 0, 0, 2 * c - b, b - c, a - b, b - c, b - c, a - b, c)),
    ]


def _b2_wcl(n: ChannelParams):
    a, b, c = n.n
    return [
        # the printed table has R_IN^n = 0 here; the alignment and the rate target need nd2
        ("B2 WCL nd1>=nd3>=nd2", a >= c >= b,
         lambda: _ser(n, False, c - b, 0, c - b, b, 0, a - c, 0, 0, a - c, c)),
        ("B2 WCL nd3>=nd2>=nd1, nd1+nd3>=2nd2>=nd3", c >= b >= a and a + c >= 2 * b >= c,
         lambda: _ser(n, False, c - b, c - b, 0, 2 * b - c, 0, 0, c - a, a + c - 2 * b, 0, b)),
        ("B2 WCL nd3>=nd2>=nd1, 2nd2>=nd1+nd3>=nd3", c >= b >= a and 2 * b >= a + c >= c,
         lambda: _ser(n, False, c - b, _h(c - a), 0, a, _h(2 * b - a - c), 0, c - a, 0, 0, _h(a + c))),
        ("B2 WCL nd1+nd2>=nd3>=nd1>=nd2", a + b >= c >= a >= b,
         lambda: _ser(n, False, c - b, c - a, a - b, a + b - c, 0, 0, c - a, c - a, 0, a)),
    ]


def _b1(n: ChannelParams):
    a, b, c = n.n
    return [
        ("B1 nd1>=nd3>=2nd2", a >= c >= 2 * b,
         lambda: _ser(n, False, c - b, b, c - 2 * b, 0, 0, a - c, 0, b, a + b - c, c - b)),
        ("B1 nd1+nd2>=nd3>=nd1>=nd2, nd3>=2nd2", a + b >= c >= a >= b and c >= 2 * b,
         lambda: _ser(n, False, c - b, b, c - 2 * b, 0, 0, 0, c - a, b, a + b - c, c - b)),
    ]


def _c1(n: ChannelParams):
    a, b, c = n.n
    return [
        ("C1 nd3>=nd1+nd2>=nd1>=nd2", c >= a + b >= a >= b,
         lambda: _ser(n, False, c - b, b, a - b, 0, 0, 0, c - a, b, 0, a)),
    ]


def _par(n, scl, R1p, l1, Lt, R1cu, R2cu, R2p, RIN, R1cv, R2cv, l2, l3, l4) -> RateAllocParallel:
    def pair(v):
        if isinstance(v, tuple):
            return (Fraction(v[0]), Fraction(v[1]))
        return (Fraction(v), Fraction(v))

    return RateAllocParallel(
        R1c_u=pair(R1cu), R2c_u=pair(R2cu), R2p_u=pair(R2p), RIN_v=pair(RIN), R1c_v=pair(R1cv),
        R2c_v=pair(R2cv), RIN_n=pair(RIN), l2=pair(l2), l3=pair(l3), l4=pair(l4),
        R1p_w=Fraction(R1p), l1=Fraction(l1), Ltilde=Fraction(Lt),
        crosslink=Crosslink.SCL if scl else Crosslink.WCL,
    )


def _a1(n: ChannelParams, nF: Fraction):
    a, b, c = n.n
    F = nF
    cols = []

    def scl_col(label, ok, fmax, R2cu, R2cv, l1, l2, l3base, l4):
        gap = pos(fmax - F)
        cols.append((label, ok, lambda: _par(
            n, True, b - c, l1, min(b + F, b + fmax), (gap, 0), R2cu, 0, min(F, fmax),
            (0, gap), R2cv, l2, l3base + gap, l4)))

    scl_col("A1 SCL nd1+nd3>=nd2>=nd3>=nd1", a + c >= b >= c >= a, Fraction(a + c - b),
            (c - a, 0), (b - c, b - a), 0, 2 * b - a - c, 0, 0)
    scl_col("A1 SCL 2nd3>=nd2>=nd1>=nd3", 2 * c >= b >= a >= c, Fraction(2 * c - b),
            0, b - c, 0, 2 * b - a - c, a - c, 0)
    scl_col("A1 SCL nd1>=nd2>=nd3, 2nd3>=nd2", a >= b >= c and 2 * c >= b, Fraction(2 * c - b),
            0, b - c, a - b, b - c, b - c, a - b)

    def wcl_col(label, ok, fmax, R2cu, R2cv, l3base):
        gap = pos(fmax - F)
        cols.append((label, ok, lambda: _par(
            n, False, c - b, 0, min(c + F, c + fmax), (gap, 0), R2cu, 0, min(F, fmax),
            (0, gap), R2cv, c - a, l3base + gap, 0)))

    wcl_col("A1 WCL nd3>=nd2>=nd1, nd1+nd3>=2nd2>=nd3", c >= b >= a and a + c >= 2 * b >= c,
            Fraction(2 * b - c), c - b, 0, a + c - 2 * b)
    wcl_col("A1 WCL nd3>=nd2>=nd1, 2nd2>=nd1+nd3>=nd3", c >= b >= a and 2 * b >= a + c >= c,
            Fraction(a), (c - b, b - a), (2 * b - a - c, 0), 0)

    low = pos(c - 2 * b)
    if F >= low:
        fmax = Fraction(c)
        cols.append(("A1 nF>=(nd3-2nd2)+ nd1>=nd3>=nd2", a >= c >= b, lambda fmax=fmax: _par(
            n, False, c - b, a - c, min(c + F, c + fmax),
            (min(b, pos(c - F)), pos(c - b - F)), 0,
            (min(c - b, F), min(pos(max(c - 2 * b, F - b)), c - b)),
            (pos(min(b + F - c, b)), min(2 * b - c + F, b, F)),
            (0, pos(min(2 * b - c, b - F))), 0, 0,
            (min(b, pos(c - F)), pos(max(c - b - F, b - F))),
            (a - c + pos(c - b - F), max(min(a + b - c, a - F, a - b), a - c)))))
        fmax = Fraction(2 * a - c)
        cols.append(("A1 nF>=(nd3-2nd2)+ nd1+nd2>=nd3>=nd1>=nd2", a + b >= c >= a >= b, lambda fmax=fmax: _par(
            n, False, c - b, 0, min(c + F, c + fmax),
            (min(b, max(a - F, c - a)), max(c - b - F, c - a)), 0,
            (min(F, a - b), min(pos(max(c - 2 * b, F - a - b + c)), a - b)),
            (pos(min(b + F - a, a + b - c)), min(2 * b - c + F, a + b - c, F)),
            (0, pos(min(2 * b - c, a + b - c - F))), 0, c - a,
            (min(b, max(a - F, c - a)), max(c - b - F, c - a, b - F)),
            (pos(a - b - F), pos(min(a + b - c, fmax - F, a - b))))))
    return cols


def _a2(n: ChannelParams, nF: Fraction):
    a, b, c = n.n
    F = nF
    cols = []
    im = Fraction(c - 2 * b)
    if F <= im:
        for label, ok, l1, l2 in (
            ("A2 Class II nd1>=nd3>=2nd2", a >= c >= 2 * b, a - c, 0),
            ("A2 Class II nd1+nd2>=nd3>=nd1>=nd2, nd3>=2nd2", a + b >= c >= a >= b and c >= 2 * b, 0, c - a),
        ):
            cols.append((label, ok, lambda l1=l1, l2=l2: _par(
                n, False, c - b, l1, 2 * min(b + F, b + im), 0, b, min(F, im), 0, 0, 0,
                l2, b, max(a - b - F, a + b - c))))
    fmax = Fraction(a - b)
    cols.append(("A2 Class III nd3>=nd1+nd2>=nd1>=nd2", c >= a + b >= a >= b, lambda: _par(
        n, False, c - b, 0, 2 * min(b + F, b + fmax), 0, b, min(F, fmax), 0, 0, 0,
        c - a, b, pos(fmax - F))))
    return cols


def table_columns(corner: Corner, n, nF=0) -> list[tuple[str, bool, Callable[[], object]]]:
    """All columns of one table as (label, regime holds, builder)."""
    n = as_channel(n)
    nF = rat(nF)
    if corner is Corner.B2:
        return _b2_scl(n) + _b2_wcl(n)
    if corner is Corner.B1:
        return _b1(n)
    if corner is Corner.C1:
        return _c1(n)
    if corner is Corner.A1_par:
        return _a1(n, nF)
    return _a2(n, nF)


def corner_mu(corner: Corner, n) -> Fraction:
    th = thresholds(n)
    if corner is Corner.B2:
        return th.mu_prime
    if corner is Corner.B1:
        if th.mu_dprime is None:
            raise RegimeNotCovered("mu'' undefined for nd3 <= nd2")
        return th.mu_dprime
    if corner is Corner.C1:
        if th.mu_tprime is None:
            raise RegimeNotCovered("mu''' undefined for nd1 = 0")
        return th.mu_tprime
    return ZERO


def table_allocation(corner: Corner, mu_or_nF, n):
    """Evaluate the first table column whose regime contains ``n``.

    Serial corners sit at their own cache size (mu', mu'' or mu'''); the second
    argument is then ignored unless it disagrees with it.  Parallel corners are
    at mu = 0 and take the fronthaul capacity as the second argument.
    """
    n = as_channel(n)
    parallel = corner in (Corner.A1_par, Corner.A2_par)
    nF = rat(mu_or_nF) if parallel and mu_or_nF is not None else ZERO
    if not parallel and mu_or_nF is not None and rat(mu_or_nF) != corner_mu(corner, n):
        raise ValueError(f"corner {corner.value} sits at mu={corner_mu(corner, n)}")
    for label, ok, build in table_columns(corner, n, nF):
        if ok:
            return build()
    raise RegimeNotCovered(f"{n} lies in no column of the {corner.value} table")


def table_column_label(corner: Corner, mu_or_nF, n) -> str:
    n = as_channel(n)
    parallel = corner in (Corner.A1_par, Corner.A2_par)
    nF = rat(mu_or_nF) if parallel and mu_or_nF is not None else ZERO
    for label, ok, _ in table_columns(corner, n, nF):
        if ok:
            return label
    raise RegimeNotCovered(f"{n} lies in no column of the {corner.value} table")
