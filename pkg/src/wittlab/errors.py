"""Exception types shared across the library."""


class WittlabError(Exception):
    """Base class for all library-specific errors."""


class InexactDivision(WittlabError):
    """A division by a power of p left a remainder.

    The ghost recursions guarantee integrality, so this always signals an
    implementation bug rather than bad input.
    """


class RingMismatch(WittlabError):
    """Operands live over incompatible base rings."""


class LengthMismatch(WittlabError):
    """Witt vectors of different lengths were combined."""


class ExponentOutOfChart(WittlabError):
    """A monomial exponent violates the chart's allowed-exponent region."""


class ChartMismatch(WittlabError):
    """An element was used with a chart it does not belong to."""


class MembershipViolation(WittlabError):
    """An operation left a divisorial section space that should be closed.

    Raised only when a closure law fails, i.e. it marks a falsified theorem
    (or a bug), never a recoverable condition.
    """


class DivisorNotCompatible(WittlabError):
    """A divisor does not satisfy the integrality needed for a pullback."""


class OrderDivisibleByP(WittlabError):
    """A group order is divisible by p, so averaging by 1/|G| is impossible."""


class NotACocycle(WittlabError):
    """Transition data violates the cocycle condition on triple overlaps."""


class EnumerationBoundExceeded(WittlabError):
    """A brute-force enumeration would exceed the configured bound."""
