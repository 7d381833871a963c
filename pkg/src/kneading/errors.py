"""Exception hierarchy shared by all modules.

Everything a caller can trigger with well-formed but mathematically
inadmissible input derives from :class:`DomainError`; the CLI maps that
family to exit status 1.
"""


class DomainError(ValueError):
    pass


class ConventionError(DomainError):
    """Input violates the standing entropy/admissibility convention."""


class RegimeError(DomainError):
    """An operation was asked about a map outside the regime it covers."""


class PrefixTooShort(DomainError):
    pass


class AmbiguousPreimage(DomainError):
    """The backward orbit reached B(a), whose preimage is the whole arc gamma."""


class NotLanding(DomainError):
    pass


class Undecided(ArithmeticError):
    """A comparison could not be settled at the working precision."""
