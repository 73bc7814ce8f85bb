"""Slow, independent reference procedures.

Everything here reaches the same fits as the path engine by a different
route: coordinate descent for the penalized problem, explicit tiny-step
iteration for the stagewise limit, closed forms for orthogonal designs, and
greedy forward selection.  They exist so the engine can be checked against
implementations that share none of its code path.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Path, PathStep, _GramCache
from .errors import DimensionMismatch, MaxIterations
from .linalg import CholeskyFactor, cholesky_append, solve_gram

__all__ = [
    "OrderStatistics",
    "soft_threshold_path",
    "epsilon_stagewise",
    "lasso_at_t",
    "forward_selection",
]

# Correlation refresh interval for the tiny-step stagewise iteration: the
# compiled kernel runs this many steps between exact recomputations.
_CHUNK = 1024


@dataclass(frozen=True)
class OrderStatistics:
    """Absolute values of a vector in decreasing order, with the permutation."""

    sorted_abs: np.ndarray
    permutation: np.ndarray

    @classmethod
    def from_values(cls, values):
        v = np.asarray(values, dtype=float).reshape(-1)
        order = np.argsort(-np.abs(v), kind="stable")
        return cls(sorted_abs=np.abs(v)[order], permutation=order)

    def threshold(self, k):
        """The (k+1)-th largest absolute value; 0 past the end."""
        if k < 0:
            raise DimensionMismatch("k must be nonnegative")
        if k >= self.sorted_abs.size:
            return 0.0
        return float(self.sorted_abs[k])


def soft_threshold_path(values, k):
    """Coefficients after k path steps on an orthogonal design.

    With orthonormal columns every variant collapses to soft thresholding of
    the back-projected response at its (k+1)-th largest absolute value.
    """
    v = np.asarray(values, dtype=float).reshape(-1)
    thr = OrderStatistics.from_values(v).threshold(k)
    return np.sign(v) * np.maximum(np.abs(v) - thr, 0.0)


def epsilon_stagewise(design, epsilon, n_steps):
    """Explicit tiny-step stagewise iteration.

    Each step moves the coefficient of the most correlated column by
    ``epsilon`` toward its correlation sign.  With ``epsilon=None`` the full
    greedy step (the entire current correlation) is taken instead, which on
    orthogonal designs reproduces forward selection.  Returns the
    coefficient trajectory, shape ``(n_steps, m)``.
    """
    X = design.columns
    y = design.response
    m = design.m
    G = design.gram()
    beta = np.zeros(m)
    c = X.T @ y
    traj = np.empty((n_steps, m))
    if epsilon is None:
        for t in range(n_steps):
            j = int(np.argmax(np.abs(c)))
            step = c[j]
            beta[j] += step
            c = c - step * G[j]
            traj[t] = beta
        return traj
    done = 0
    while done < n_steps:
        chunk = min(_CHUNK, n_steps - done)
        kernels.stagewise_chunk(beta, c, G, float(epsilon), chunk, traj, done)
        done += chunk
        # periodic exact refresh keeps the incrementally updated
        # correlations from drifting over long runs
        c = X.T @ (y - X @ beta)
    return traj


def lasso_at_t(design, t, tol=1e-8):
    """Penalized coordinate-descent solve at coefficient budget ``t``.

    Bisects the penalty level until the fitted ``sum |beta_j|`` matches
    ``t`` within ``tol`` (or the unpenalized fit is reached), then certifies
    stationarity of the result.  Entirely independent of the path engine.
    """
    X = design.columns
    y = design.response
    m = design.m
    if t < 0:
        raise DimensionMismatch("t must be nonnegative")
    if t <= tol:
        return np.zeros(m)

    beta_full, *_ = np.linalg.lstsq(X, y, rcond=None)
    if t >= float(np.abs(beta_full).sum()) - tol:
        return beta_full

    G = np.ascontiguousarray(design.gram())
    c0 = X.T @ y
    lam_lo, lam_hi = 0.0, float(np.abs(c0).max())
    beta = np.zeros(m)
    for _ in range(200):
        lam = 0.5 * (lam_lo + lam_hi)
        c = c0 - G @ beta
        sweeps = kernels.cd_sweeps(beta, c, G, lam, 1e-10, 100000)
        if sweeps < 0:
            raise MaxIterations("coordinate descent did not converge")
        total = float(np.abs(beta).sum())
        if abs(total - t) <= tol:
            _certify_stationary(beta, c0 - G @ beta, lam)
            return beta.copy()
        if total > t:
            lam_lo = lam
        else:
            lam_hi = lam
    raise MaxIterations("penalty bisection did not bracket the budget")


def _certify_stationary(beta, grad, lam, slack=1e-6):
    bound = lam + slack * max(1.0, lam)
    for j in range(beta.size):
        if beta[j] != 0.0:
            if abs(grad[j] - lam * np.sign(beta[j])) > slack * max(1.0, lam):
                raise MaxIterations(
                    f"stationarity failed on coordinate {j}: "
                    f"grad={grad[j]:.3e} lam={lam:.3e}"
                )
        elif abs(grad[j]) > bound:
            raise MaxIterations(
                f"gradient bound failed on coordinate {j}: "
                f"|{grad[j]:.3e}| > {lam:.3e}"
            )


def forward_selection(design, k_max):
    """Greedy orthogonal-projection selection, reported in path form.

    Each round picks the column most correlated with the current residual
    and refits least squares on the selected set.  The returned
    :class:`Path` uses ``gamma = 0`` and ``A = 0`` placeholders since the
    walk is not piecewise linear.
    """
    X = design.columns
    y = design.response
    n, m = X.shape
    limit = min(m, n - 1) if design.centered else min(m, n)
    if not 0 <= k_max <= limit:
        raise DimensionMismatch(f"k_max={k_max} outside 0..{limit}")

    gram = _GramCache(X)
    c0 = X.T @ y
    y_sq = float(y @ y)
    beta = np.zeros(m)
    selected = []
    factor = CholeskyFactor.empty()
    steps = [
        PathStep(
            step_index=0, action=None, variable=None, sign=None,
            active_after=(), signs_after=(), gamma=0.0,
            C_max=float(np.abs(c0).max()) if m else 0.0, A=0.0,
            beta=beta.copy(), rss=y_sq, T=0.0,
        )
    ]
    for step in range(1, k_max + 1):
        sel = np.array(selected, dtype=int)
        c = c0 - gram.stack(sel) @ beta[sel] if sel.size else c0.copy()
        c_abs = np.abs(c)
        c_abs[sel] = -np.inf
        j = int(np.argmax(c_abs))
        if c_abs[j] < 1e-10:
            break
        col = gram.column(j)
        factor = cholesky_append(factor, col[sel], float(col[j]))
        selected.append(j)
        sel = np.array(selected, dtype=int)
        coef = solve_gram(factor, c0[sel])
        beta = np.zeros(m)
        beta[sel] = coef
        rss = y_sq - float(coef @ c0[sel])
        steps.append(
            PathStep(
                step_index=step, action="add", variable=j,
                sign=int(np.sign(coef[-1])) or 1,
                active_after=tuple(selected),
                signs_after=tuple(int(np.sign(v)) or 1 for v in coef),
                gamma=0.0, C_max=float(c_abs[j]), A=0.0,
                beta=beta.copy(), rss=float(rss), T=float(np.abs(beta).sum()),
            )
        )
    return Path(variant="forward-selection", steps=tuple(steps), design=design)
