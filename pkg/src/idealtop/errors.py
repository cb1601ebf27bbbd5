"""Exception hierarchy.  Every error raised on purpose derives from IdealTopError."""

from __future__ import annotations


class IdealTopError(Exception):
    """Base class for all library errors."""


class CapacityExceeded(IdealTopError):
    pass


class PointOutOfRange(IdealTopError):
    pass


class NotATopology(IdealTopError):
    """A set family failed the topology axioms.

    ``reason`` is one of ``missing-empty``, ``missing-full``, ``union``,
    ``intersection`` or ``out-of-range``; ``pair`` holds the offending
    member(s) as bitmasks and ``path`` a JSON path when the family came from a
    file.
    """

    def __init__(self, reason: str, pair: tuple[int, ...] = (), path: str | None = None):
        self.reason = reason
        self.pair = pair
        self.path = path
        msg = reason
        if pair:
            msg += " " + ", ".join(bin(p) for p in pair)
        if path:
            msg = f"{path}: {msg}"
        super().__init__(msg)


class ParseError(IdealTopError):
    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class GroundSetMismatch(IdealTopError):
    pass


class UnknownSlotName(IdealTopError):
    pass


class EmptyCorpus(IdealTopError):
    pass


class OracleMismatch(IdealTopError):
    """Fast path and brute-force evaluation disagree (debug mode only)."""
