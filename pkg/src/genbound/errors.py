"""Exception taxonomy shared by all genbound modules.

Every failure mode that callers are expected to handle gets its own class so
that the CLI can map errors onto its exit-code contract (1 usage, 2 no bound
certified, 3 field-arithmetic limitation).
"""


class GenboundError(Exception):
    """Base class for all errors raised by this package."""


class SieveCapacityError(GenboundError):
    """A query needs primes or prime powers beyond the sieve limit."""


class PreconditionError(GenboundError):
    """A criterion or bound was invoked outside its hypotheses."""


class WindowTooWideError(GenboundError):
    """The window factor c makes the criterion denominator nonpositive."""


class SplittingUnavailableError(GenboundError):
    """Splitting data at a prime cannot be certified from the given polynomial.

    The offending prime is stored in ``p``.
    """

    def __init__(self, p: int, message: str | None = None):
        self.p = p
        super().__init__(message or f"splitting unavailable at p={p}")


class UnsupportedRepresentationError(GenboundError):
    """An ideal was handed to an operation that needs a degree-1 representation."""


class IrreducibilityError(GenboundError):
    """Construction of a field rejected the defining polynomial."""


class UnknownDiscriminantError(GenboundError):
    """The field discriminant is uncertified and was not supplied by the caller."""


class NoBoundCertifiedError(GenboundError):
    """No admissible (T, c) pair certified a bound for the given input."""
