"""Dense linear-algebra kernel for active-set Gram matrices.

Maintains an upper-triangular Cholesky factor of the current active-set Gram
matrix under column append/remove, provides the associated triangular solves,
and runs the nonnegative least squares inner loop used to project the
equiangular direction into the positive cone of the active columns.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from . import kernels
from .errors import (
    DegenerateColumn,
    DimensionMismatch,
    EmptyFace,
    IndexOutOfRange,
    MaxIterations,
)

__all__ = [
    "CholeskyFactor",
    "cholesky_append",
    "cholesky_drop",
    "solve_gram",
    "nnls_inner_loop",
]

# A pivot whose squared value falls below this fraction of the new column's
# squared norm marks the column as linearly dependent on the active set.
DEGENERACY_RTOL = 1e-12

# Relative residual in R'R - G beyond which a drop triggers refactorization.
REFACTOR_RTOL = 1e-8


@dataclass(frozen=True)
class CholeskyFactor:
    """Upper-triangular factor R with R'R equal to the tracked Gram matrix.

    The Gram matrix itself is carried alongside the factor: the downdate
    residual check and the nonnegative least squares loop both need it, and
    at active-set sizes it is small.  Instances are immutable; the
    append/drop operations return new factors.
    """

    R: np.ndarray
    gram: np.ndarray

    @property
    def active_dim(self):
        return self.R.shape[0]

    @classmethod
    def empty(cls):
        return cls(R=np.zeros((0, 0)), gram=np.zeros((0, 0)))

    @classmethod
    def from_gram(cls, gram):
        """Fresh factorization of a symmetric positive-definite matrix."""
        G = np.ascontiguousarray(gram, dtype=float)
        if G.ndim != 2 or G.shape[0] != G.shape[1]:
            raise DimensionMismatch("gram must be square")
        if G.shape[0] == 0:
            return cls.empty()
        R = np.linalg.cholesky(G).T.copy()
        return cls(R=R, gram=G.copy())


def cholesky_append(factor, new_cross_products, new_norm_sq):
    """Extend the factor by one column of the Gram matrix.

    ``new_cross_products`` holds the inner products of the entering column
    with the current active columns; ``new_norm_sq`` its squared norm.
    Cost O(k^2).  Raises :class:`DegenerateColumn` when the entering column
    is numerically dependent on the active set.
    """
    v = np.asarray(new_cross_products, dtype=float).reshape(-1)
    k = factor.active_dim
    if v.shape[0] != k:
        raise DimensionMismatch(f"expected {k} cross products, got {v.shape[0]}")
    norm_sq = float(new_norm_sq)
    if norm_sq <= 0.0:
        raise DegenerateColumn("entering column has nonpositive squared norm")

    if k == 0:
        r12 = v
        pivot_sq = norm_sq
    else:
        r12 = solve_triangular(
            factor.R, v, trans="T", lower=False, check_finite=False
        )
        pivot_sq = norm_sq - float(r12 @ r12)
    if pivot_sq < DEGENERACY_RTOL * norm_sq:
        raise DegenerateColumn(
            f"pivot^2 = {pivot_sq:.3e} below tolerance for norm^2 = {norm_sq:.3e}"
        )

    R = np.zeros((k + 1, k + 1))
    R[:k, :k] = factor.R
    R[:k, k] = r12
    R[k, k] = math.sqrt(pivot_sq)

    gram = np.zeros((k + 1, k + 1))
    gram[:k, :k] = factor.gram
    gram[:k, k] = v
    gram[k, :k] = v
    gram[k, k] = norm_sq
    return CholeskyFactor(R=R, gram=gram)


def cholesky_drop(factor, position):
    """Remove one row/column of the tracked Gram matrix from the factor.

    Deleting column ``position`` of R leaves an upper-Hessenberg matrix;
    Givens rotations restore the triangle in O(k^2).  If the re-triangularized
    factor no longer reproduces the reduced Gram matrix to ``REFACTOR_RTOL``
    (relative Frobenius), a fresh factorization replaces it.
    """
    k = factor.active_dim
    if not 0 <= position < k:
        raise IndexOutOfRange(f"position {position} out of range for k={k}")

    gram = np.delete(np.delete(factor.gram, position, axis=0), position, axis=1)
    if k == 1:
        return CholeskyFactor.empty()

    work = np.ascontiguousarray(np.delete(factor.R, position, axis=1))
    kernels.givens_downdate(work, position)
    R = np.ascontiguousarray(work[: k - 1])
    diag = np.diagonal(R).copy()
    flip = diag < 0
    if flip.any():
        R[flip] *= -1.0

    resid = np.linalg.norm(R.T @ R - gram) / max(1.0, np.linalg.norm(gram))
    if resid > REFACTOR_RTOL:
        return CholeskyFactor.from_gram(gram)
    return CholeskyFactor(R=R, gram=gram)


def solve_gram(factor, rhs):
    """Solve G x = rhs through the maintained triangular factor."""
    b = np.asarray(rhs, dtype=float).reshape(-1)
    k = factor.active_dim
    if b.shape[0] != k:
        raise DimensionMismatch(f"rhs length {b.shape[0]}, expected {k}")
    if k == 0:
        return np.zeros(0)
    return cho_solve((factor.R, False), b, check_finite=False)


def nnls_inner_loop(gram_factor, target_weights):
    """Project the equiangular direction into the cone of active columns.

    Starting from the unconstrained weight vector, repeatedly removes every
    variable with nonpositive weight and re-solves on the remaining face.
    Once all weights are positive, verifies that each removed variable's
    column makes an angle with the face direction no smaller than the face's
    equal angle (the cone-face optimality condition); the worst violator, if
    any, is re-admitted and the loop continues.

    Returns ``(feasible_weights, retained)``: a full-length weight vector
    that is zero off the face, and the sorted positions of the face within
    the active set.  The weight vector is normalized so the implied
    direction has unit length.
    """
    w = np.asarray(target_weights, dtype=float).reshape(-1)
    k = gram_factor.active_dim
    if w.shape[0] != k:
        raise DimensionMismatch(f"expected {k} weights, got {w.shape[0]}")
    if k == 0:
        raise EmptyFace("no active variables")
    if np.all(w > 0):
        return w.copy(), np.arange(k)

    G = gram_factor.gram
    S = [i for i in range(k) if w[i] > 0]
    dropped = [i for i in range(k) if w[i] <= 0]
    cap = 4 * k * k + 10
    it = 0
    while True:
        it += 1
        if it > cap:
            raise MaxIterations(f"face search did not settle in {cap} rounds")
        if not S:
            raise EmptyFace("all variables eliminated")
        g1 = np.linalg.solve(G[np.ix_(S, S)], np.ones(len(S)))
        if g1.min() <= 0:
            bad = [S[i] for i in range(len(S)) if g1[i] <= 0]
            for b in bad:
                S.remove(b)
                dropped.append(b)
            continue
        A = 1.0 / math.sqrt(g1.sum())
        wf = A * g1
        worst, worst_i = 0.0, None
        for i in dropped:
            v = float(G[i, S] @ wf) - A
            if v < worst - 1e-10:
                worst, worst_i = v, i
        if worst_i is None:
            S_sorted = sorted(S)
            g1 = np.linalg.solve(G[np.ix_(S_sorted, S_sorted)], np.ones(len(S_sorted)))
            A = 1.0 / math.sqrt(g1.sum())
            out = np.zeros(k)
            out[S_sorted] = A * g1
            return out, np.array(S_sorted)
        dropped.remove(worst_i)
        S.append(worst_i)
        S.sort()
