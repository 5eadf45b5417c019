"""Delivery time per bit of a two-transmitter, two-user network with an edge cache and a fronthaul link.

Everything is exact: rationals are ``fractions.Fraction`` and an unbounded
delivery time is ``math.inf``.
"""

from .converse import ConverseLpSolution, lb_parallel, lb_serial_cache_only, lb_serial_corollaries, lb_serial_lp
from .errors import (
    DecodeFailure,
    FranError,
    IndivisibleFileSize,
    Infeasible,
    InsufficientFronthaul,
    PlanConflict,
    RegimeNotCovered,
    SchemeError,
    ShiftRangeError,
    SizeMismatch,
    Unbounded,
    UnreachableUser,
)
from .ldm import INF, BitVec, ChannelParams, QMode, Rat, channel_outputs, downshift, gaussian_to_ldm, make_channel
from .rates import (
    Corner,
    RateAllocParallel,
    RateAllocSerial,
    check_parallel,
    check_serial,
    parallel_rate_lp,
    serial_fronthaul_lp,
    serial_rate_lp,
    table_allocation,
)
from .regimes import (
    BroadcastCond,
    Crosslink,
    Klass,
    RegimeClass,
    Thresholds,
    broadcast_condition,
    broadcast_dtb,
    classify,
    dtb_parallel,
    dtb_serial,
    thresholds,
    wireless_bottleneck,
)
from .schemes import (
    Demand,
    DecodePlan,
    Mode,
    Placement,
    Scheme,
    decode_plan,
    synth_parallel,
    synth_serial_cache_only,
    synth_serial_with_fronthaul,
)
from .sim import Certificate, DeliveryMode, Transcript, Verdict, empirical_dtb, run_delivery, verify_optimality

__version__ = "0.1.0"
