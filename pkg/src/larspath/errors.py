"""Exception and warning types shared across the package."""


class LarsError(Exception):
    """Base class for all larspath errors."""


# ---------------------------------------------------------------------------
# linear algebra kernel


class DegenerateColumn(LarsError):
    """A column is (numerically) linearly dependent on the active set."""


class IndexOutOfRange(LarsError, IndexError):
    """A position argument does not address a row/column of the factor."""


class EmptyFace(LarsError):
    """The nonnegative least squares loop eliminated every variable."""


# ---------------------------------------------------------------------------
# preprocessing


class ConstantColumn(LarsError):
    """A predictor column has zero scale and cannot be standardized."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"column {name!r} is constant (zero scale)")


class DimensionMismatch(LarsError, ValueError):
    """Array shapes are inconsistent with each other."""


class WrongColumnCount(LarsError, ValueError):
    """The quadratic expansion received an unusable raw-column layout."""


# ---------------------------------------------------------------------------
# path engine


class NoPositiveCandidate(LarsError):
    """No candidate variable yields a positive step length (final step)."""


class MaxStepsExceeded(LarsError):
    """The path did not terminate within the configured step budget."""


class StalledPath(LarsError):
    """Two consecutive zero-length steps; the input needs jitter."""


class TOutOfRange(LarsError, ValueError):
    """Interpolation parameter t lies outside [0, T_final]."""


# ---------------------------------------------------------------------------
# model selection and oracles


class VariantMismatch(LarsError, ValueError):
    """An operation received a path fitted under an unsupported variant."""


class Underdetermined(LarsError):
    """Too few observations to estimate the residual variance."""


class MaxIterations(LarsError):
    """An iterative solver hit its iteration cap before converging."""


# ---------------------------------------------------------------------------
# data ingestion


class ParseError(LarsError, ValueError):
    """A CSV row could not be parsed."""

    def __init__(self, line, column, message=None):
        self.line = line
        self.column = column
        super().__init__(
            message or f"malformed CSV at line {line}, column {column}"
        )


class MissingResponse(LarsError, KeyError):
    """The requested response column is absent from the header."""


class NonNumericCell(LarsError, ValueError):
    """A data cell could not be converted to a float."""

    def __init__(self, row, column_name):
        self.row = row
        self.column_name = column_name
        super().__init__(
            f"non-numeric value in data row {row}, column {column_name!r}"
        )


class EmptyData(LarsError):
    """The CSV contains a header but no data rows (or nothing at all)."""


# ---------------------------------------------------------------------------
# warnings


class TieWarning(UserWarning):
    """Several candidates tied for the next event; lowest index was taken."""
