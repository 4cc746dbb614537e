"""Exception hierarchy shared across the package."""

from __future__ import annotations


class DomainError(Exception):
    """Base class for errors caused by mathematically invalid requests."""


class InvalidRank(DomainError):
    """Rank outside the admissible range of a simple family."""


class UnsupportedAutomorphism(DomainError):
    """No diagram automorphism of the requested order exists for the type."""


class IncompatibleOrder(DomainError):
    """The automorphism order does not divide the group order m."""


class RankDefect(DomainError):
    """A lattice quotient that should be finite has free rank."""


class TooLarge(DomainError):
    """An enumeration would exceed the configured cap."""


class MethodUnavailable(DomainError):
    """The requested computation method does not apply to this isogeny."""


class NotAdjoint(DomainError):
    """Operation requires the adjoint isogeny."""


class NotSimplyConnected(DomainError):
    """Operation requires the simply connected isogeny."""


class NotInLattice(DomainError):
    """A coordinate vector is not integral in the required lattice."""


class InvalidAssignment(DomainError):
    """A local-type assignment indexes outside the computed class set."""


class InternalError(Exception):
    """Invariant violation that indicates a bug, not a bad request."""
