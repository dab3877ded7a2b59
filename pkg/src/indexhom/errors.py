"""Exception types shared across the package."""


class IndexhomError(Exception):
    """Base class for all package errors."""


class NotAPrimePower(IndexhomError):
    """Field size is not a prime power, or outside the supported range."""


class DimensionMismatch(IndexhomError):
    """Vector/matrix dimensions or fields do not agree."""


class ZeroVector(IndexhomError):
    """Operation requires a nonzero vector."""


class Singular(IndexhomError):
    """Matrix inversion requested for a rank-deficient matrix."""


class SizeLimitExceeded(IndexhomError):
    """Input exceeds the configured exact-search budget."""


class InvalidVertex(IndexhomError):
    """Vertex identifier not present in the graph."""


class ConstructionUnavailable(IndexhomError):
    """Closed-form set construction undefined for these parameters."""


class VerificationFailed(IndexhomError):
    """An internal self-check failed; indicates a bug, never bad input."""


class TranslationFailed(IndexhomError):
    """Encoding derived from a homomorphism witness failed validation."""


class GraphParseError(IndexhomError):
    """Malformed graph text; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
