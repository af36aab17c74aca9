"""Exception types shared across the package.

Everything that should map to CLI exit code 3 derives from DomainError;
ParseError (exit code 2) carries the offending position when known.
"""

from __future__ import annotations


class DomainError(Exception):
    """A mathematically invalid request (pole, bad model, depth overrun, ...)."""


class ParseError(Exception):
    """Unreadable input text; `position` is a 0-based offset when applicable."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class CurveFileError(ParseError):
    """Malformed curve-spec file."""


# exact-series
class ZeroConstantTerm(DomainError):
    """Series inversion needs a unit constant term."""


class PoleAtOrigin(DomainError):
    """Rational function denominator vanishes at 0; no power-series expansion."""


class PoleAtPoint(DomainError):
    """Evaluation point is a pole."""


# lambda-core
class InsufficientDepth(DomainError):
    """Adams character known to depth R only; a deeper psi was requested."""


class NegativeTwistInPoincare(DomainError):
    """Negative Tate twists have no power-series Poincare realization."""


# curve-data
class TooLarge(DomainError):
    """Point enumeration refused: field size beyond the safety guard."""


class SingularModel(DomainError):
    """The plane model fails its smoothness check."""


class InconsistentCounts(DomainError):
    """Point counts incompatible with any Weil numerator of the stated genus."""


class NonIntegralCount(DomainError):
    """A quantity that must be a natural number is not."""


# motive-expr
class PoleAtTwist(DomainError):
    """Zeta value requested at a pole of the zeta function."""


class LaurentRequired(DomainError):
    """The class only has a Laurent-type realization, not a power series."""


class NonConvergent(DomainError):
    """An infinite sum without a usable closed form in this realization."""


class ArityError(DomainError):
    """Structurally malformed expression node."""


class CurveDataRequired(DomainError):
    """Count realization of a curve-dependent class needs curve data."""


# bun-formula
class NegativeLength(DomainError):
    """Section length nl - d must be non-negative."""


# oracle-census
class InconsistentCensus(DomainError):
    """Point counts do not come from a non-negative integral closed-point census."""


class InsufficientCensus(DomainError):
    """Census known to bounded degree only; a deeper count was requested."""
