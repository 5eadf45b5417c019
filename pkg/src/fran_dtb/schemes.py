"""Bit-level delivery schemes built from rate allocations.

Symbols name bits of the *requested* files: atom ``(k, j)`` is bit ``j`` of
the file asked for by user ``k + 1`` and is written ``W{k+1}[j]`` in the text
form.  A symbol is a tuple of atoms combined by XOR; the empty tuple is a
silent level.

Fractional rates are realised on a T-fold extension: T physical channel uses
form one use of an LDM with strengths ``T * n``, virtual level ``v`` being
level ``v // T`` of physical use ``v % T``.
"""

from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import IndivisibleFileSize, InsufficientFronthaul, PlanConflict, SchemeError
from .ldm import ChannelParams, as_channel, rat
from .lp import lattice_point
from .rates import (
    _PAR,
    _STACK,
    parallel_lp_spec,
    parallel_rate_lp,
    serial_fronthaul_lp,
    serial_lp_spec,
)
from .regimes import Crosslink, crosslink, nf_max

Atom = tuple[int, int]
Symbol = tuple[Atom, ...]
SILENT: Symbol = ()
T_B = 2
T_O = 1
EXTENSION_SEARCH = 6


class Mode(enum.Enum):
    SerialCacheOnly = "serial_cache_only"
    SerialWithFronthaul = "serial_with_fronthaul"
    ParallelBlockMarkov = "parallel_block_markov"

    @property
    def parallel(self) -> bool:
        return self is Mode.ParallelBlockMarkov


@dataclass(frozen=True)
class Demand:
    d1: int
    d2: int


@dataclass(frozen=True)
class Placement:
    """Raw-bit cache: the same positions of every file are stored at the HeNB."""

    positions: tuple[int, ...]

    @property
    def cache_bits_per_file(self) -> int:
        return len(self.positions)

    def for_file(self, i: int) -> tuple[int, ...]:
        return self.positions


@dataclass(frozen=True)
class ChannelUse:
    time: int
    x1: tuple[Symbol, ...]
    x2: tuple[Symbol, ...]


@dataclass(frozen=True)
class FronthaulUse:
    time: int
    payload: tuple[Symbol, ...]


@dataclass(frozen=True)
class BlockParams:
    B: int
    T_B: int = T_B
    T_O: int = T_O
    slot: int = 1


@dataclass(frozen=True)
class Scheme:
    mode: Mode
    L: int
    n: ChannelParams
    mu: Fraction
    nF: Fraction
    placement: Placement
    channel_uses: tuple[ChannelUse, ...]
    fronthaul_plan: tuple[FronthaulUse, ...]
    extension: int
    rate: Fraction
    block_params: Optional[BlockParams] = None

    @property
    def T_E(self) -> int:
        return 0 if self.mode.parallel else len(self.channel_uses)

    @property
    def T_F(self) -> int:
        return 0 if self.mode.parallel else len(self.fronthaul_plan)

    @property
    def T_P(self) -> int:
        return len(self.channel_uses) if self.mode.parallel else 0

    @property
    def total_time(self) -> int:
        return self.T_P if self.mode.parallel else self.T_E + self.T_F

    def to_json(self) -> str:
        return json.dumps(scheme_to_dict(self), indent=1)

    @classmethod
    def from_json(cls, text: str) -> Scheme:
        return scheme_from_dict(json.loads(text))


# -- text form ---------------------------------------------------------------------

_REF = re.compile(r"W([12])\[(\d+)(?::(\d+):(\d+))?\]")


def _runs(symbols: Sequence[Symbol]) -> list[list]:
    """Run-length encode a level map as [start, length, ref] with sliced refs."""
    out: list[list] = []
    i = 0
    while i < len(symbols):
        s = symbols[i]
        if not s:
            i += 1
            continue
        j = i + 1
        steps = None
        while j < len(symbols):
            t = symbols[j]
            if len(t) != len(s) or any(a[0] != b[0] for a, b in zip(s, t)):
                break
            d = tuple(b[1] - a[1] for a, b in zip(symbols[j - 1], t))
            if any(x <= 0 for x in d) or (steps is not None and d != steps):
                break
            steps = d
            j += 1
        size = j - i
        parts = []
        for pos, (k, start) in enumerate(s):
            if size == 1:
                parts.append(f"W{k + 1}[{start}]")
            else:
                st = steps[pos]
                parts.append(f"W{k + 1}[{start}:{start + size * st}:{st}]")
        out.append([i, size, "^".join(parts)])
        i = j
    return out


def _unruns(runs: list, length: int) -> tuple[Symbol, ...]:
    levels: list[Symbol] = [SILENT] * length
    for start, size, ref in runs:
        cols = []
        for part in ref.split("^"):
            m = _REF.fullmatch(part)
            if not m:
                raise SchemeError(f"bad symbol reference {part!r}")
            k = int(m.group(1)) - 1
            a = int(m.group(2))
            if m.group(3) is None:
                cols.append([(k, a)])
            else:
                b, st = int(m.group(3)), int(m.group(4))
                cols.append([(k, j) for j in range(a, b, st)])
        if any(len(c) != size for c in cols):
            raise SchemeError(f"run length mismatch in {ref!r}")
        for off in range(size):
            levels[start + off] = tuple(c[off] for c in cols)
    return tuple(levels)


def scheme_to_dict(s: Scheme) -> dict:
    return {
        "mode": s.mode.value,
        "L": s.L,
        "n": list(s.n.n),
        "q": s.n.q,
        "mu": str(s.mu),
        "nF": str(s.nF),
        "extension": s.extension,
        "rate": str(s.rate),
        "block_params": None if s.block_params is None else vars(s.block_params),
        "placement": list(s.placement.positions),
        "channel_uses": [
            {"t": u.time, "x1": _runs(u.x1), "x2": _runs(u.x2)} for u in s.channel_uses
        ],
        "fronthaul_plan": [{"t": f.time, "payload": _runs(f.payload), "size": len(f.payload)} for f in s.fronthaul_plan],
    }


def scheme_from_dict(d: dict) -> Scheme:
    n = as_channel(tuple(d["n"]))
    q = d["q"]
    if q != n.q:
        n = ChannelParams(n.nd1, n.nd2, n.nd3, n.nF, q)
    bp = d.get("block_params")
    return Scheme(
        mode=Mode(d["mode"]),
        L=d["L"],
        n=n,
        mu=Fraction(d["mu"]),
        nF=Fraction(d["nF"]),
        placement=Placement(tuple(d["placement"])),
        channel_uses=tuple(ChannelUse(u["t"], _unruns(u["x1"], q), _unruns(u["x2"], q)) for u in d["channel_uses"]),
        fronthaul_plan=tuple(FronthaulUse(f["t"], _unruns(f["payload"], f["size"])) for f in d["fronthaul_plan"]),
        extension=d["extension"],
        rate=Fraction(d["rate"]),
        block_params=None if bp is None else BlockParams(**bp),
    )


# -- integral stacks ---------------------------------------------------------------


def _lcm_den(values) -> int:
    m = 1
    for v in values:
        m = math.lcm(m, Fraction(v).denominator)
    return m


def _min_extension(spec, target: Fraction, fallback: Sequence[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    """Smallest T (searched up to a small bound) with a T-integral optimal allocation."""
    top = _lcm_den(list(fallback) + [target])
    for T in range(1, min(top, EXTENSION_SEARCH) + 1):
        if (T * target).denominator != 1:
            continue
        x = lattice_point(spec, target, T)
        if x is not None:
            return T, x
    return top, tuple(fallback)


@dataclass(frozen=True)
class _Plan:
    """Integral stacks per slot of one block, ``K`` bits per user per block."""

    T: int
    K: int
    stacks: tuple[dict, ...]
    crosslink: Crosslink


@lru_cache(maxsize=4096)
def _serial_plan(mu: Fraction, nF: Fraction, n: ChannelParams) -> tuple[_Plan, Fraction]:
    fa = serial_fronthaul_lp(mu, nF, n)
    a = fa.alloc
    if a.Lbar == 0:
        raise InsufficientFronthaul(f"no finite delivery time at mu={mu}, nF={nF} for {n}")
    cap = fa.mu_G * a.Lbar
    spec = serial_lp_spec(fa.mu_G, n, cache_cap=cap)
    x0 = (a.R1p_w, a.R2p_u, a.Rc_u, a.RIN_n, a.Rc_v, a.l3, a.l4)
    T, x = _min_extension(spec, a.Lbar, x0)
    stack = {k: int(v * T) for k, v in zip(_STACK, x)}
    return _Plan(T, int(T * a.Lbar), (stack,), crosslink(n)), a.Lbar


@lru_cache(maxsize=4096)
def _parallel_plan(mu: Fraction, nF: Fraction, n: ChannelParams) -> tuple[_Plan, Fraction]:
    a = parallel_rate_lp(mu, nF, n)
    Lt = a.Ltilde
    if Lt == 0:
        raise InsufficientFronthaul(f"no finite delivery time at mu={mu}, nF={nF} for {n}")
    F = min(nF, nf_max(n))
    spec = parallel_lp_spec(mu, F, n, cache_cap=mu * Lt / 2 + F)
    x0 = [a.R1p_w]
    for t in (0, 1):
        x0 += [a.R2p_u[t], a.R2c_u[t], a.RIN_n[t], a.R2c_v[t], a.l3[t], a.l4[t]]
    T, x = _min_extension(spec, Lt, x0)
    vals = dict(zip(_PAR, x))
    stacks = tuple(
        {k: int(T * (vals["R1p"] if k == "R1p" else vals[f"{k}{t}"])) for k in _STACK} for t in ("1", "2")
    )
    return _Plan(T, int(T * Lt), stacks, crosslink(n)), Lt


# -- block layout ------------------------------------------------------------------


@dataclass
class _Slot:
    x1: list  # virtual level maps
    x2: list
    henb_positions: list  # block-local positions whose bits the HeNB sends


def _assign(plan: _Plan) -> tuple[list[dict], list[dict]]:
    """Block-local bit positions for every role of every slot (None where unused).

    IN parts come first and share positions across the two files, then the
    HeNB private parts, then the eNB-only parts.
    """
    scl = plan.crosslink is Crosslink.SCL
    K = plan.K
    roles1 = [{} for _ in plan.stacks]
    roles2 = [{} for _ in plan.stacks]
    seq1 = [(t, "IN", s["RIN"]) for t, s in enumerate(plan.stacks)]
    seq1 += [(t, "2p", s["R2p"]) for t, s in enumerate(plan.stacks)]
    seq1 += [item for t, s in enumerate(plan.stacks) for item in ((t, "c", s["Rcu"]), (t, "1p", s["R1p"] if scl else 0))]
    seq2 = [(t, "IN", s["RIN"]) for t, s in enumerate(plan.stacks)]
    seq2 += [item for t, s in enumerate(plan.stacks) for item in ((t, "c", s["Rcv"]), (t, "1p", 0 if scl else s["R1p"]))]
    for seq, roles in ((seq1, roles1), (seq2, roles2)):
        pos = 0
        for t, role, size in seq:
            roles[t][role] = [p if p < K else None for p in range(pos, pos + size)]
            pos += size
        if pos < K:
            raise SchemeError("stack carries fewer bits than the block needs")
    return roles1, roles2


def _slot_layout(plan: _Plan, n: ChannelParams, t: int, r1: dict, r2: dict) -> _Slot:
    T = plan.T
    s = plan.stacks[t]
    N1, N2 = T * n.nd1, T * n.nd2
    Q = T * n.q
    x1: list = [SILENT] * Q
    x2: list = [SILENT] * Q
    scl = plan.crosslink is Crosslink.SCL

    def at(k, p):
        return SILENT if p is None else ((k, p),)

    lvl = 0
    for k, ps in ((0, r1["c"]), (1, r2["c"]), (1, r2["IN"]), (0, r1["1p"]) if scl else (1, r2["1p"])):
        for p in ps:
            x2[lvl] = at(k, p)
            lvl += 1
    if lvl > Q:
        raise SchemeError("eNB stack exceeds the signal space")
    henb = []
    for i, p in enumerate(r1["2p"]):
        x1[i] = at(0, p)
        if p is not None:
            henb.append(p)
    if s["RIN"]:
        off = s["Rcu"] + s["Rcv"] + N1 - N2
        if off < s["R2p"] or off + s["RIN"] > N1:
            raise SchemeError("IN block cannot be aligned at user 1")
        for i, (pu, pv) in enumerate(zip(r1["IN"], r2["IN"])):
            if pu != pv:
                raise SchemeError("IN parts of the two files must share positions")
            x1[off + i] = ((0, pu), (1, pv))
            henb.append(pu)
    return _Slot(x1, x2, henb)


def _physical(virtual: list, T: int, base: int) -> list[list]:
    """Split a virtual level map into T physical maps and shift atoms to global positions."""
    q = len(virtual) // T
    out = [[SILENT] * q for _ in range(T)]
    for v, sym in enumerate(virtual):
        out[v % T][v // T] = tuple((k, base + p) for k, p in sym)
    return out


def _blocks(plan: _Plan, n: ChannelParams, count: int):
    """Per block and slot: physical x1/x2 maps and the global HeNB positions."""
    r1, r2 = _assign(plan)
    slots = [_slot_layout(plan, n, t, r1[t], r2[t]) for t in range(len(plan.stacks))]
    for b in range(count):
        base = b * plan.K
        yield [
            (_physical(sl.x1, plan.T, base), _physical(sl.x2, plan.T, base), [base + p for p in sl.henb_positions])
            for sl in slots
        ]


def _henb_symbols(x1_maps) -> dict[int, Symbol]:
    """Global position -> the HeNB symbol that uses it."""
    out = {}
    for m in x1_maps:
        for sym in m:
            if sym:
                out[sym[0][1]] = sym
    return out


def _need_L(L: int, granule: int) -> None:
    if L <= 0 or L % granule:
        raise IndivisibleFileSize(L, granule)


# -- serial ------------------------------------------------------------------------


def serial_granule(mu, nF, n) -> int:
    """Smallest file size unit for which the serial scheme has integral timing."""
    mu, nF = rat(mu), rat(nF)
    n = as_channel(n)
    plan, _ = _serial_plan(mu, nF, n)
    m = len(next(_blocks(plan, n, 1))[0][2])
    g = math.lcm(plan.K, mu.denominator)
    d = max(Fraction(m, plan.K) - mu, Fraction(0))
    if d:
        g = math.lcm(g, (d / nF).denominator)
    return g


def synth_serial_with_fronthaul(mu, nF, n, L: int) -> Scheme:
    """Serial scheme: the cloud first fronthauls whatever the cache lacks, then the wireless phase."""
    mu, nF = rat(mu), rat(nF)
    n = as_channel(n)
    if not 0 <= mu <= 1 or nF < 0 or nF.denominator != 1:
        raise ValueError("need mu in [0, 1] and an integer nF >= 0")
    plan, Lbar = _serial_plan(mu, nF, n)
    _need_L(L, serial_granule(mu, nF, n))
    blocks = list(_blocks(plan, n, L // plan.K))
    needed = [p for blk in blocks for (_, _, h) in blk for p in h]
    budget = int(mu * L)
    cached = sorted(needed[:budget])
    cached_set = set(cached)
    symbols: dict[int, Symbol] = {}
    uses = []
    missing = []
    for blk in blocks:
        x1s, x2s, h = blk[0]
        symbols.update(_henb_symbols(x1s))
        missing += [p for p in h if p not in cached_set]
        for x1, x2 in zip(x1s, x2s):
            uses.append((tuple(x1), tuple(x2)))
    deficit = len(missing)
    if deficit and nF == 0:
        raise InsufficientFronthaul("cache too small and no fronthaul")
    T_F = deficit // int(nF) if deficit else 0
    if T_F * nF != deficit:
        raise IndivisibleFileSize(L, serial_granule(mu, nF, n))
    step = int(nF) if nF else 0
    fh = tuple(FronthaulUse(i, tuple(symbols[p] for p in missing[i * step:(i + 1) * step])) for i in range(T_F))
    channel = tuple(ChannelUse(T_F + i, x1, x2) for i, (x1, x2) in enumerate(uses))
    mode = Mode.SerialWithFronthaul if deficit else Mode.SerialCacheOnly
    return Scheme(mode, L, n, mu, nF, Placement(tuple(cached)), channel, fh, plan.T, Lbar)


def synth_serial_cache_only(mu, n, L: int) -> Scheme:
    return synth_serial_with_fronthaul(mu, 0, n, L)


# -- parallel ----------------------------------------------------------------------


def parallel_granule(mu, nF, n, B: int) -> int:
    mu, nF = rat(mu), rat(nF)
    plan, _ = _parallel_plan(mu, nF, as_channel(n))
    return math.lcm(B * plan.K, mu.denominator)


def synth_parallel(mu, nF, n, L: int, B: int) -> Scheme:
    """Block-Markov scheme: B blocks of two slots after one offset slot.

    The fronthaul for slot g is carried during slot g-1, so the HeNB only ever
    forwards bits it has already received or cached.
    """
    mu, nF = rat(mu), rat(nF)
    n = as_channel(n)
    if not 0 <= mu <= 1 or nF < 0 or nF.denominator != 1:
        raise ValueError("need mu in [0, 1] and an integer nF >= 0")
    if B < 1:
        raise ValueError("need at least one block")
    plan0, Lt = _parallel_plan(mu, nF, n)
    _need_L(L, parallel_granule(mu, nF, n, B))
    r = L // (B * plan0.K)
    plan = _Plan(plan0.T * r, plan0.K * r, tuple({k: v * r for k, v in s.items()} for s in plan0.stacks), plan0.crosslink)
    slot = plan.T
    cap = int(nF) * slot
    slots = [s for blk in _blocks(plan, n, B) for s in blk]
    budget = int(mu * L)
    mandatory = [max(0, len(h) - cap) for _, _, h in slots]
    if sum(mandatory) > budget:
        raise SchemeError("per-slot cache need exceeds the cache budget")
    spare = budget - sum(mandatory)
    cached: list[int] = []
    for (_, _, h), must in zip(slots, mandatory):
        take = min(len(h), must + spare)
        spare -= take - must
        cached += h[:take]
    cached_set = set(cached)
    q = n.q
    idle = tuple([SILENT] * q)
    uses = [ChannelUse(i, idle, idle) for i in range(slot)]
    fh = []
    for g, (x1s, x2s, h) in enumerate(slots, start=1):
        syms = _henb_symbols(x1s)
        send = [syms[p] for p in h if p not in cached_set]
        start = (g - 1) * slot
        for i in range(slot):
            part = tuple(send[i * int(nF):(i + 1) * int(nF)]) if nF else ()
            if part:
                fh.append(FronthaulUse(start + i, part))
        for i, (x1, x2) in enumerate(zip(x1s, x2s)):
            uses.append(ChannelUse(g * slot + i, tuple(x1), tuple(x2)))
    return Scheme(
        Mode.ParallelBlockMarkov, L, n, mu, nF, Placement(tuple(sorted(cached))), tuple(uses), tuple(fh),
        plan.T, Lt, BlockParams(B, T_B, T_O, slot),
    )


# -- decoding plan -----------------------------------------------------------------


@dataclass(frozen=True)
class DecodeStep:
    use: int
    level: int
    atom: Atom
    cancel: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class DecodePlan:
    """Per user, successive reads: ``atom = y[use][level] xor (cancelled atoms)``."""

    steps: tuple[tuple[DecodeStep, ...], tuple[DecodeStep, ...]]


def received_symbols(scheme: Scheme, n) -> tuple[list, list]:
    """Symbolic outputs: per use and level, the set of atoms XORed there."""
    n = as_channel(n)
    q = scheme.n.q
    s1, s2, s3 = q - n.nd1, q - n.nd2, q - n.nd3
    y1s, y2s = [], []
    for u in scheme.channel_uses:
        y1 = [frozenset() for _ in range(q)]
        y2 = [frozenset() for _ in range(q)]
        for lvl in range(q):
            acc = set()
            for shift, x in ((s1, u.x1), (s2, u.x2)):
                src = lvl - shift
                if 0 <= src < q:
                    acc ^= set(x[src])
            y1[lvl] = frozenset(acc)
            src = lvl - s3
            if 0 <= src < q:
                y2[lvl] = frozenset(u.x2[src])
        y1s.append(y1)
        y2s.append(y2)
    return y1s, y2s


def decode_plan(scheme: Scheme, n) -> DecodePlan:
    ys = received_symbols(scheme, n)
    L = scheme.L
    plans = []
    for k in (0, 1):
        known: set = set()
        steps = []
        pending = [(u, lvl, s) for u, y in enumerate(ys[k]) for lvl, s in enumerate(y) if s]
        progress = True
        while progress:
            progress = False
            rest = []
            for u, lvl, s in pending:
                unknown = s - known
                if len(unknown) == 1:
                    (atom,) = unknown
                    steps.append(DecodeStep(u, lvl, atom, tuple(sorted(s - {atom}))))
                    known.add(atom)
                    progress = True
                elif unknown:
                    rest.append((u, lvl, s))
            pending = rest
        want = {(k, j) for j in range(L)}
        lost = want - known
        if lost:
            raise PlanConflict(f"user {k + 1} cannot recover {len(lost)} bits, e.g. {sorted(lost)[:3]}")
        plans.append(tuple(steps))
    return DecodePlan((plans[0], plans[1]))
