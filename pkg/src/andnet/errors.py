"""Exception types shared across the package."""


class AndnetError(Exception):
    """Base class for all data and validation errors raised by this package."""


class CorpusFormatError(AndnetError):
    """Raised when a corpus file or record violates the input schema."""


class LabelFileError(AndnetError):
    """Raised when a cluster label file is malformed or inconsistent with a corpus."""


class SpecValidationError(AndnetError):
    """Raised when a synthetic-corpus spec is infeasible or out of bounds."""


class MentionSetMismatch(AndnetError):
    """Raised when two clusterings do not partition the same mention set."""
