"""Exception types raised by the library.

Every error the CLI reports maps to one of these classes; the class name is
the diagnostic shown to the user.
"""


class RecurplotError(Exception):
    """Base class for all library errors."""


# --- series ingestion ---------------------------------------------------

class MalformedRow(RecurplotError):
    """A CSV row whose date or value cell does not parse."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class DuplicateDate(RecurplotError):
    """Two observations share the same date."""


class EmptySeries(RecurplotError):
    """No usable observations."""


class UnknownColumn(RecurplotError):
    """A named CSV column is missing from the header."""


class GapTooLarge(RecurplotError):
    """Calendar gap exceeds the fill policy's maximum."""


class GapFound(RecurplotError):
    """Calendar gap present while the policy forbids any."""


# --- fitting ------------------------------------------------------------

class SingularFit(RecurplotError):
    """Trend design matrix is rank-deficient."""


class DegenerateSeries(RecurplotError):
    """Autoregression normal equations are singular (e.g. constant series)."""


class InsufficientData(RecurplotError):
    """Too few observations for the requested model order."""


class InsufficientHistory(RecurplotError):
    """Forecast history shorter than the model order."""


# --- recurrence ---------------------------------------------------------

class SeriesTooShort(RecurplotError):
    """Series shorter than the embedding requires."""


class NegativeThreshold(RecurplotError):
    """Recurrence threshold below zero."""


class SizeMismatch(RecurplotError):
    """Matrices of different sizes combined."""


class WindowTooLarge(RecurplotError):
    """Analysis window does not fit in the matrix."""


# --- rendering ----------------------------------------------------------

class ImageTooLarge(RecurplotError):
    """Requested image exceeds the pixel budget."""
