"""Design-matrix preparation: standardization, back-transforms, expansion.

The solver operates on predictors that are centered and scaled to unit
Euclidean length, with a centered response.  ``StandardizedDesign`` carries
the metadata needed to map fitted coefficients back to the original units.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConstantColumn, DimensionMismatch, WrongColumnCount

__all__ = [
    "StandardizedDesign",
    "standardize",
    "from_unit_columns",
    "to_original_units",
    "quadratic_expand",
]


@dataclass(frozen=True)
class StandardizedDesign:
    """A ready-to-fit design: unit-length predictor columns, centered y.

    Attributes
    ----------
    columns : (n, m) array, each column mean 0 (when ``centered``) and
        squared norm 1.
    response : (n,) array, mean 0 when ``centered``.
    column_means, column_scales : per-column centering and scale
        (scale = root of the centered sum of squares, not the standard
        deviation, so that each stored column has unit length).
    response_mean : scalar subtracted from the raw response.
    column_names : labels, aligned with columns.
    centered : False only for designs built by :func:`from_unit_columns`,
        e.g. identity designs used in closed-form tests, where centering
        would destroy the structure.
    """

    columns: np.ndarray
    response: np.ndarray
    column_means: np.ndarray
    column_scales: np.ndarray
    response_mean: float
    column_names: tuple = field(default=())
    centered: bool = True

    @property
    def n(self):
        return self.columns.shape[0]

    @property
    def m(self):
        return self.columns.shape[1]

    def gram(self):
        """Full m x m Gram matrix of the stored columns."""
        return self.columns.T @ self.columns


def _default_names(m):
    return tuple(f"x{j + 1}" for j in range(m))


def standardize(raw_columns, raw_response, names=None):
    """Center and rescale a raw design to mean-0, unit-length columns.

    Returns a :class:`StandardizedDesign`.  Raises :class:`ConstantColumn`
    for any zero-variance predictor and :class:`DimensionMismatch` when the
    response length does not match the matrix.
    """
    X = np.asarray(raw_columns, dtype=float)
    y = np.asarray(raw_response, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("raw_columns must be 2-D")
    n, m = X.shape
    if y.shape != (n,):
        raise DimensionMismatch(
            f"response has shape {y.shape}, expected ({n},)"
        )
    if n < 2:
        raise DimensionMismatch("need at least two observations")
    names = _default_names(m) if names is None else tuple(names)
    if len(names) != m:
        raise DimensionMismatch(f"{len(names)} names for {m} columns")

    means = X.mean(axis=0)
    centered = X - means
    scales = np.sqrt((centered**2).sum(axis=0))
    # a column of identical values can leave a tiny nonzero scale through
    # rounding in the mean, so the check is relative to the column magnitude
    floor = 1e-12 * np.sqrt(n) * np.maximum(1.0, np.abs(means))
    bad = np.flatnonzero(scales <= floor)
    if bad.size:
        raise ConstantColumn(names[bad[0]])
    ymean = float(y.mean())
    return StandardizedDesign(
        columns=centered / scales,
        response=y - ymean,
        column_means=means,
        column_scales=scales,
        response_mean=ymean,
        column_names=names,
    )


def from_unit_columns(columns, response, names=None):
    """Wrap columns that are already unit length, without centering.

    Intended for synthetic designs (identity matrices, pre-built orthonormal
    frames) where the closed-form theory applies to the raw coordinates.
    The response is taken as-is.  Columns must have unit squared norm within
    1e-9; means and scales are recorded as 0 and 1 so the original-units
    back-transform is the identity.
    """
    X = np.asarray(columns, dtype=float)
    y = np.asarray(response, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("columns must be 2-D")
    n, m = X.shape
    if y.shape != (n,):
        raise DimensionMismatch(
            f"response has shape {y.shape}, expected ({n},)"
        )
    norms = (X**2).sum(axis=0)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise DimensionMismatch("columns must have unit squared norm")
    names = _default_names(m) if names is None else tuple(names)
    return StandardizedDesign(
        columns=X.copy(),
        response=y.copy(),
        column_means=np.zeros(m),
        column_scales=np.ones(m),
        response_mean=0.0,
        column_names=names,
        centered=False,
    )


def to_original_units(design, beta_standardized):
    """Map standardized coefficients to original units plus an intercept.

    The returned pair satisfies, as an algebraic identity,

        X_raw @ beta_original + intercept == X_std @ beta_standardized
                                             + response_mean.
    """
    beta = np.asarray(beta_standardized, dtype=float)
    if beta.shape != (design.m,):
        raise DimensionMismatch(
            f"beta has shape {beta.shape}, expected ({design.m},)"
        )
    beta_original = beta / design.column_scales
    intercept = design.response_mean - float(
        design.column_means @ beta_original
    )
    return beta_original, intercept


def quadratic_expand(raw_columns, binary_column, names=None):
    """Expand m raw predictors into the full quadratic design.

    Output column order: the m main effects, the m(m-1)/2 pairwise products
    (i < j), and the m - 1 squares (every column except ``binary_column``,
    whose square would duplicate information up to an affine shift).  For
    the ten-predictor diabetes data this gives the 64-column design.

    Products and squares are formed from mean-centered copies of the inputs,
    so an interaction column measures joint variation beyond what the two
    main effects already carry.  The main effects themselves are emitted
    raw; the standardization applied afterwards absorbs their centering.
    Returns ``(matrix, labels)`` with labels following the patterns
    ``name_i``, ``name_i:name_j`` and ``name_i^2``.
    """
    X = np.asarray(raw_columns, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise WrongColumnCount(
            f"need at least 2 columns, got {X.shape[1] if X.ndim == 2 else 'n/a'}"
        )
    n, m = X.shape
    if not 0 <= binary_column < m:
        raise WrongColumnCount(
            f"binary_column {binary_column} out of range for {m} columns"
        )
    names = _default_names(m) if names is None else tuple(names)
    centered = X - X.mean(axis=0)

    cols = [X[:, j] for j in range(m)]
    labels = list(names)
    for i in range(m):
        for j in range(i + 1, m):
            cols.append(centered[:, i] * centered[:, j])
            labels.append(f"{names[i]}:{names[j]}")
    for j in range(m):
        if j == binary_column:
            continue
        cols.append(centered[:, j] ** 2)
        labels.append(f"{names[j]}^2")
    return np.column_stack(cols), labels
