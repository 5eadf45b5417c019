"""Exception types shared across the package."""


class FranError(Exception):
    """Base class for all package errors."""


class UnreachableUser(FranError, ValueError):
    """A user has no incoming link (nd3 == 0 or max(nd1, nd2) == 0)."""


class ShiftRangeError(FranError, ValueError):
    pass


class SizeMismatch(FranError, ValueError):
    pass


class Infeasible(FranError):
    pass


class Unbounded(FranError):
    pass


class RegimeNotCovered(FranError, ValueError):
    """The channel lies outside every column of the requested table."""


class IndivisibleFileSize(FranError, ValueError):
    def __init__(self, L: int, granule: int):
        super().__init__(f"file size {L} is not a multiple of {granule}")
        self.L = L
        self.granule = granule


class InsufficientFronthaul(FranError, ValueError):
    """No finite delivery time exists at this cache size and fronthaul capacity."""


class SchemeError(FranError):
    """A scheme violates placement, causality, capacity or exclusivity rules."""


class PlanConflict(FranError):
    """A requested symbol cannot be read cleanly from the received stack."""


class DecodeFailure(FranError):
    """Decoded bits differ from the requested files."""
