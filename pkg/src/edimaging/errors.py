"""Exception types shared across the package.

Everything raised on bad domain input derives from :class:`DomainError`, so
the CLI can map any of them to exit code 1 while usage errors stay exit 2.
"""


class DomainError(Exception):
    """Base class for well-defined domain failures."""


class FormulaSyntaxError(DomainError):
    """Malformed formula text; carries the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(DomainError):
    """A formula references an atom that is not in the vocabulary."""

    def __init__(self, atom: str, position: int | None = None):
        where = f" (at position {position})" if position is not None else ""
        super().__init__(f"unknown atom {atom!r}{where}")
        self.atom = atom
        self.position = position


class InvalidBeliefState(DomainError):
    """Probabilities are negative, missing, or do not sum to exactly 1."""


class InvalidDistance(DomainError):
    """A distance table violates the pseudo-distance conditions."""


class ConditioningUndefined(DomainError):
    """Bayesian conditioning on evidence with zero prior mass."""


class EmptyEvidence(DomainError):
    """Evidence with no models was supplied to an operation requiring some."""


class DegenerateNormalization(DomainError):
    """The imaging normalizer came out zero: the weight function assigns no
    mass to any evidence world for this prior."""


class InvalidParameter(DomainError):
    """A numeric parameter is outside its allowed range."""


class RejectedWeight(DomainError):
    """A composite operator refused an inner weight function whose declared
    properties do not meet its requirements."""


class SuiteTooLarge(DomainError):
    """An exhaustive check was requested beyond the supported vocabulary size."""
