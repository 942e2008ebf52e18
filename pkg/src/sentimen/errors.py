"""Exception types raised across the toolkit.

All domain errors derive from :class:`SentimenError` so callers can catch the
whole family at once.  Plain I/O failures (missing file, unwritable path)
surface as the builtin ``OSError``.
"""


class SentimenError(Exception):
    """Base class for every toolkit-specific error."""


class MissingColumnError(SentimenError):
    """CSV header lacks a required column."""

    def __init__(self, column: str):
        super().__init__(f"CSV header is missing required column {column!r}")
        self.column = column


class MalformedRowError(SentimenError):
    """A CSV data row could not be parsed (unbalanced quotes, short row)."""

    def __init__(self, row_index: int, reason: str):
        super().__init__(f"malformed CSV row {row_index}: {reason}")
        self.row_index = row_index


class UnknownLabelError(SentimenError):
    """A source label token has no entry in the label map."""

    def __init__(self, token: str, row_index=None):
        where = "" if row_index is None else f" (row {row_index})"
        super().__init__(f"unknown label token {token!r}{where}")
        self.token = token
        self.row_index = row_index


class EmptyCorpusError(SentimenError):
    """An operation that needs at least one document received none."""


class EmptyVocabularyError(SentimenError):
    """Every candidate term was filtered out while fitting the vocabulary."""


class ZeroClassCountError(SentimenError):
    """Balanced class weights requested for a class with zero examples."""

    def __init__(self, class_index: int):
        super().__init__(f"class {class_index} has zero examples; balanced weights undefined")
        self.class_index = class_index


class DegenerateDataError(SentimenError):
    """Training data violates a precondition (missing class, size mismatch)."""


class NonFiniteError(SentimenError):
    """A numeric routine produced a non-finite value (diverged)."""


class LengthMismatchError(SentimenError):
    """Paired sequences have different lengths."""


class OrdinalOutOfRangeError(SentimenError):
    """A class ordinal falls outside [0, n_classes)."""


class EmptyMatrixError(SentimenError):
    """A confusion matrix with zero total count cannot be summarized."""


class UnsupportedVersionError(SentimenError):
    """A model envelope declares a format version this build cannot read."""

    def __init__(self, version):
        super().__init__(f"unsupported envelope format_version: {version!r}")
        self.version = version


class CorruptEnvelopeError(SentimenError):
    """A model envelope is structurally invalid (shapes, non-finite values)."""
