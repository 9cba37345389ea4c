"""Exception taxonomy for the qcluster engine.

Every contract violation raises a subclass of QClusterError so callers can
distinguish "you gave me bad data" from "the mathematics said no".
"""

from __future__ import annotations

__all__ = [
    "QClusterError",
    "FrozenMutation",
    "SeedMismatch",
    "NotDivisible",
    "NotLaurent",
    "NotSubtractionFree",
    "NotAPolynomial",
    "DegenerateExchange",
    "InvalidFolding",
    "NotInvariant",
    "InvalidGluing",
    "ConstructionFailed",
    "HypothesisViolated",
    "TermLimitExceeded",
]


class QClusterError(Exception):
    """Base class for all engine errors."""


class FrozenMutation(QClusterError):
    """Mutation requested at a frozen (or out-of-range) index."""


class SeedMismatch(QClusterError):
    """Two elements (or an element and an operation) live over different seeds."""


class NotDivisible(QClusterError):
    """Exact division left a nonzero remainder."""


class NotLaurent(QClusterError):
    """Transport required a division that does not close in the torus."""

    def __init__(self, msg: str, path: tuple[int, ...] = ()):
        super().__init__(msg)
        self.path = path


class NotSubtractionFree(QClusterError):
    """Tropicalization was asked of an element with negative coefficients."""


class NotAPolynomial(QClusterError):
    """A polynomiality certificate was requested for a non-polynomial input."""


class DegenerateExchange(QClusterError):
    """An exchange binomial degenerated to 1 + 1 (all-zero exchange column)."""


class InvalidFolding(QClusterError):
    """The orbit data does not satisfy the folding requirements."""


class NotInvariant(QClusterError):
    """An element claimed symmetric is not fixed by the orbit permutations."""


class InvalidGluing(QClusterError):
    """Amalgamation data violates the gluing requirements."""


class ConstructionFailed(QClusterError):
    """A searched construction found no admissible solution."""


class HypothesisViolated(QClusterError):
    """An ambient quiver fails one of the stated chain hypotheses."""

    def __init__(self, bullet: int, msg: str):
        super().__init__(f"hypothesis ({bullet}) violated: {msg}")
        self.bullet = bullet


class TermLimitExceeded(QClusterError):
    """An intermediate element grew past QCLUSTER_MAX_TERMS."""
