"""Exception types shared across the package."""


class FrobfixError(Exception):
    """Base class for all package-specific errors."""


class FieldConstructionError(FrobfixError, ValueError):
    """Raised when a field modulus is rejected (reducible, out of range)."""


class FieldMismatchError(FrobfixError, ValueError):
    """Raised when elements of unrelated fields are mixed without an embedding."""


class EmbeddingError(FrobfixError, ValueError):
    """Raised when a requested field embedding does not exist."""


class DegreeCapError(FrobfixError, ValueError):
    """Raised when a computation would need an extension beyond the degree cap."""


class CurveParameterError(FrobfixError, ValueError):
    """Raised for invalid curve family parameters (t in {0, 1})."""


class NotOnCurveError(FrobfixError, ValueError):
    """Raised when coordinates fail the curve equation exactly."""


class InconsistencyError(FrobfixError, RuntimeError):
    """Raised when two independent internal criteria disagree.

    This always indicates a bug: the redundant cross-checks exist so that a
    wrong answer cannot be returned silently.
    """


class VerificationError(FrobfixError, RuntimeError):
    """Raised when a constructed witness fails its exact re-verification."""


class SearchExhaustedError(FrobfixError, RuntimeError):
    """Raised when a bounded witness search ends without a witness."""
