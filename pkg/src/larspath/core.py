"""Piecewise-linear coefficient path engine.

The fitter walks a sequence of vertices.  At each vertex one event is
applied (a variable joins the active set or leaves it), the equiangular
direction of the active columns is formed, and the coefficient vector moves
along that direction until the next event:

* a candidate's correlation ties the shrinking envelope (join),
* an active coefficient crosses zero under the sign-consistency rule
  (drop; lasso and positive-lasso variants), or
* the travel distance C_max / A is exhausted (final move, landing on the
  restricted least squares fit of the active set).

Moves are labeled by the event applied at their start; the final move keeps
the label of its starting event, so a path that adds a variable and then
runs to the least squares point counts one move, not two.

Numerical conventions that the step counts depend on:

* Correlations are recomputed exactly from cached Gram columns after every
  move.  Incremental correlation updates drift at the 1e-2 level on
  ill-conditioned quadratic designs and were observed to derail drop/join
  ordering; exact recomputation costs O(m * k) per move and removes the
  drift entirely.
* A variable that leaves the active set at the current vertex (coefficient
  sign crossing, or cone projection under the stagewise variant) sits
  exactly on the correlation envelope.  Its same-sign join ratio is 0/0 and
  must not be re-detected by tolerance; the scan excludes the leaver's
  departing sign branch at that vertex only.  The opposite sign branch
  stays live, which is what allows a dropped variable to re-enter later.
* Join/drop events are carried explicitly from one vertex to the next
  (``pending`` state) instead of being re-derived from correlations.
"""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    MaxStepsExceeded,
    NoPositiveCandidate,
    StalledPath,
    TieWarning,
    TOutOfRange,
    VariantMismatch,
)
from .linalg import (
    CholeskyFactor,
    cholesky_append,
    cholesky_drop,
    nnls_inner_loop,
    solve_gram,
)
from .preprocess import StandardizedDesign, to_original_units

__all__ = [
    "EquiangularBasis",
    "PathStep",
    "Path",
    "compute_equiangular",
    "next_join",
    "final_gamma",
    "fit_path",
    "interpolate",
]

VARIANTS = ("lars", "lasso", "stagewise", "positive-lasso")

# Correlations this small (in response units) terminate the walk.
ENVELOPE_FLOOR = 1e-10

# Relative tolerance used for tie detection on the correlation scale.
TIE_RTOL = 1e-12

# Denominators below this are treated as exactly parallel to the envelope.
PARALLEL_TOL = 1e-14


@dataclass(frozen=True)
class EquiangularBasis:
    """Direction data for one active set.

    ``w`` holds the positive weights on the signed active columns, ``u`` the
    unit-norm direction they span, and ``a`` the inner products of every
    column with ``u``.  ``A`` is the common correlation of the active
    columns with ``u``.
    """

    active: tuple
    signs: tuple
    A: float
    w: np.ndarray
    u: np.ndarray
    a: np.ndarray


@dataclass(frozen=True)
class PathStep:
    """One vertex of a fitted path.

    ``action`` is the event applied at the start of the move that produced
    this vertex ("add" or "drop"), or None for the starting vertex.
    ``projection_dropped`` lists variables removed by the stagewise cone
    projection folded into this move; their coefficients stay frozen at the
    values they had when projected out, so for the stagewise variant the
    nonzero support of ``beta`` can exceed ``active_after``.
    """

    step_index: int
    action: object
    variable: object
    sign: object
    active_after: tuple
    signs_after: tuple
    gamma: float
    C_max: float
    A: float
    beta: np.ndarray
    rss: float
    T: float
    projection_dropped: tuple = ()


@dataclass(frozen=True)
class Path:
    """A fitted coefficient path: the starting vertex plus one per move."""

    variant: str
    steps: tuple
    design: StandardizedDesign = field(repr=False)

    @property
    def n_steps(self):
        return len(self.steps) - 1

    @property
    def entry_order(self):
        return [s.variable for s in self.steps if s.action == "add"]

    @property
    def t_max(self):
        return self.steps[-1].T

    def interpolate(self, t):
        return interpolate(self, t)

    def coefficients_at(self, t, original_units=False):
        beta = interpolate(self, t)
        if not original_units:
            return beta, 0.0
        return to_original_units(self.design, beta)


class _TieRestart(Exception):
    """Internal: a tie was hit while a jitter restart is available."""


def _normalize_variant(variant):
    kind = getattr(variant, "kind", variant)
    if kind not in VARIANTS:
        raise VariantMismatch(f"unknown variant {kind!r}")
    return kind


class _GramCache:
    """Columns of X'X, materialized eagerly when n >= m, lazily otherwise."""

    def __init__(self, X):
        self.X = X
        n, m = X.shape
        self.m = m
        self._full = X.T @ X if n >= m else None
        self._cols = None if self._full is not None else {}

    def column(self, j):
        if self._full is not None:
            return self._full[:, j]
        col = self._cols.get(j)
        if col is None:
            col = self.X.T @ self.X[:, j]
            self._cols[j] = col
        return col

    def stack(self, indices):
        if len(indices) == 0:
            return np.zeros((self.m, 0))
        if self._full is not None:
            return self._full[:, indices]
        return np.column_stack([self.column(j) for j in indices])


def _scan_join(c, C_hat, A, a, cand_idx, left_signs, positive, tie_tol):
    """Smallest travel distance at which a candidate ties the envelope.

    Works on both sign branches (one for the positive variant).  A branch
    whose correlation gap is within ``tie_tol`` of zero ties immediately
    (distance 0); this includes the exactly-parallel 0/0 case.  Returns
    ``(gamma, variable, sign, n_tied)`` or None when nothing can tie.
    """
    if cand_idx.size == 0:
        return None
    cc = c[cand_idx]
    aa = a[cand_idx]

    def branch(num, den):
        r = np.full(cc.shape, np.inf)
        ahead = den > PARALLEL_TOL
        normal = ahead & (num > tie_tol)
        r[normal] = num[normal] / den[normal]
        tied_now = (np.abs(num) <= tie_tol) & (ahead | (np.abs(den) <= PARALLEL_TOL))
        r[tied_now] = 0.0
        return r

    def disable(r, var):
        p = np.searchsorted(cand_idx, var)
        if p < cand_idx.size and cand_idx[p] == var:
            r[p] = np.inf

    r1 = branch(C_hat - cc, A - aa)
    for var, s in left_signs.items():
        if s == 1:
            disable(r1, var)
    if positive:
        best = r1
        r2 = None
    else:
        r2 = branch(C_hat + cc, A + aa)
        for var, s in left_signs.items():
            if s == -1:
                disable(r2, var)
        best = np.minimum(r1, r2)

    gmin = best.min()
    if not np.isfinite(gmin):
        return None
    tied = np.flatnonzero((best - gmin) * A <= tie_tol)
    p = int(tied[0])
    var = int(cand_idx[p])
    if r2 is None or r1[p] <= r2[p]:
        sign = 1
    else:
        sign = -1
    return float(best[p]), var, sign, int(tied.size)


def _scan_drop(beta_active, direction, floor):
    """First active coefficient to cross zero along the move direction."""
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(direction != 0.0, -beta_active / direction, np.inf)
    r[~(r > floor)] = np.inf
    p = int(np.argmin(r))
    if not np.isfinite(r[p]):
        return np.inf, None
    return float(r[p]), p


def compute_equiangular(design, active, signs, factor):
    """Equiangular direction of the signed active columns.

    ``factor`` must hold the signed Gram matrix of the active set in the
    same order as ``active``.
    """
    active = tuple(int(j) for j in active)
    signs = tuple(int(s) for s in signs)
    k = len(active)
    g1 = solve_gram(factor, np.ones(k))
    A = 1.0 / math.sqrt(g1.sum())
    w = A * g1
    u = design.columns[:, list(active)] @ (np.array(signs, dtype=float) * w)
    a = design.columns.T @ u
    return EquiangularBasis(active=active, signs=signs, A=A, w=w, u=u, a=a)


def next_join(correlations, C_max, basis, candidates):
    """Join distance and entrant among the given candidate variables.

    Returns ``(gamma_hat, joining, joining_sign)``.  Ties within tolerance
    resolve to the lowest variable index and emit a :class:`TieWarning`.
    Raises :class:`NoPositiveCandidate` when no candidate can tie the
    envelope before it reaches zero.
    """
    c = np.asarray(correlations, dtype=float)
    cand_idx = np.asarray(sorted(int(j) for j in candidates), dtype=int)
    tie_tol = TIE_RTOL * max(1.0, C_max)
    found = _scan_join(c, C_max, basis.A, basis.a, cand_idx, {}, False, tie_tol)
    if found is None:
        raise NoPositiveCandidate("no candidate ties the envelope")
    gamma, var, sign, n_tied = found
    if n_tied > 1:
        warnings.warn(
            f"{n_tied} candidates tie at gamma={gamma:.6g}; taking variable {var}",
            TieWarning,
            stacklevel=2,
        )
    return gamma, var, sign


def final_gamma(C_max, A):
    """Travel distance to the restricted least squares point."""
    if A <= 0.0:
        raise ValueError("A must be positive")
    return C_max / A


def _tie(tie_mode, message):
    if tie_mode == "raise":
        raise _TieRestart(message)
    warnings.warn(message, TieWarning, stacklevel=3)


def _fit_once(design, kind, max_steps, stop_after, tie_mode):
    X = design.columns
    y = design.response
    n, m = X.shape
    budget = 8 * m if max_steps is None else int(max_steps)
    max_active = min(m, n - 1) if design.centered else min(m, n)
    positive = kind == "positive-lasso"
    lasso_rule = kind in ("lasso", "positive-lasso")
    stagewise = kind == "stagewise"

    gram = _GramCache(X)
    c0 = X.T @ y
    c = c0.copy()
    beta = np.zeros(m)
    y_sq = float(y @ y)
    active = []
    signs = {}
    active_mask = np.zeros(m, dtype=bool)
    factor = CholeskyFactor.empty()

    C0 = float(np.abs(c).max()) if m else 0.0
    steps = [
        PathStep(
            step_index=0,
            action=None,
            variable=None,
            sign=None,
            active_after=(),
            signs_after=(),
            gamma=0.0,
            C_max=C0,
            A=0.0,
            beta=beta.copy(),
            rss=y_sq,
            T=0.0,
        )
    ]

    def make_path():
        return Path(variant=kind, steps=tuple(steps), design=design)

    # Cold start: highest absolute correlation (highest positive correlation
    # for the positive variant), ties to the lowest index.
    if positive:
        top = float(c.max()) if m else 0.0
        if top <= ENVELOPE_FLOOR:
            return make_path()
        tie_tol0 = TIE_RTOL * max(1.0, top)
        tied = np.flatnonzero(c >= top - tie_tol0)
    else:
        top = C0
        if top < ENVELOPE_FLOOR:
            return make_path()
        tie_tol0 = TIE_RTOL * max(1.0, top)
        tied = np.flatnonzero(np.abs(c) >= top - tie_tol0)
    if tied.size > 1:
        _tie(tie_mode, f"{tied.size} variables tie at the start; taking {int(tied[0])}")
    j0 = int(tied[0])
    s0 = 1 if (positive or c[j0] >= 0) else -1
    pending = ("add", j0, s0)
    zero_run = 0

    while True:
        if active:
            act_idx = np.array(active, dtype=int)
            envelope = float(np.mean(np.abs(c[act_idx])))
        else:
            envelope = float(np.abs(c).max())
        if envelope < ENVELOPE_FLOOR:
            break
        n_moves = len(steps) - 1
        if stop_after is not None and n_moves >= stop_after:
            break
        if n_moves >= budget:
            raise MaxStepsExceeded(f"path incomplete after {n_moves} moves")

        left_signs = {}
        proj = ()
        if pending[0] == "add":
            _, j, sj = pending
            col = gram.column(j)
            if active:
                s_vec = np.array([signs[i] for i in active], dtype=float)
                cross = sj * s_vec * col[np.array(active, dtype=int)]
            else:
                cross = np.zeros(0)
            factor = cholesky_append(factor, cross, float(col[j]))
            active.append(j)
            signs[j] = sj
            active_mask[j] = True
            action, event_var, event_sign = "add", j, sj
        else:
            _, j, s_prev = pending
            pos = active.index(j)
            factor = cholesky_drop(factor, pos)
            active.pop(pos)
            del signs[j]
            active_mask[j] = False
            left_signs[j] = s_prev
            action, event_var, event_sign = "drop", j, s_prev
        pending = None

        k = len(active)
        g1 = solve_gram(factor, np.ones(k))
        if stagewise and g1.min() <= 0.0:
            w_target = (1.0 / math.sqrt(g1.sum())) * g1
            _, retained = nnls_inner_loop(factor, w_target)
            gone = sorted(set(range(k)) - set(int(p) for p in retained), reverse=True)
            proj_vars = []
            for pos in gone:
                v = active.pop(pos)
                proj_vars.append(v)
                left_signs[v] = signs.pop(v)
                active_mask[v] = False
                factor = cholesky_drop(factor, pos)
            proj = tuple(sorted(proj_vars))
            k = len(active)
            g1 = solve_gram(factor, np.ones(k))

        A = 1.0 / math.sqrt(g1.sum())
        w = A * g1
        act_idx = np.array(active, dtype=int)
        s_vec = np.array([signs[i] for i in active], dtype=float)
        C_hat = float(np.mean(np.abs(c[act_idx])))
        gamma_bar = C_hat / A
        floor = 1e-12 * gamma_bar
        tie_tol = TIE_RTOL * max(1.0, C_hat)
        a = (gram.stack(act_idx) * s_vec) @ w

        if k >= max_active:
            found = None
        else:
            cand_idx = np.flatnonzero(~active_mask)
            found = _scan_join(c, C_hat, A, a, cand_idx, left_signs, positive, tie_tol)
        if found is not None:
            g_join, j_next, s_next, n_tied = found
            if n_tied > 1:
                _tie(
                    tie_mode,
                    f"{n_tied} candidates tie at gamma={g_join:.6g}; "
                    f"taking variable {j_next}",
                )
        else:
            g_join = np.inf

        g_drop, p_drop = np.inf, None
        if lasso_rule:
            g_drop, p_drop = _scan_drop(beta[act_idx], s_vec * w, floor)

        if g_join < gamma_bar:
            gamma, event = g_join, "join"
        else:
            gamma, event = gamma_bar, "final"
        if g_drop <= gamma * (1 + 1e-12):
            gamma, event = g_drop, "drop"
            j_drop = active[p_drop]

        if gamma <= floor:
            zero_run += 1
            if zero_run > 1:
                raise StalledPath(
                    f"two consecutive zero-length moves at step {n_moves + 1}"
                )
        else:
            zero_run = 0

        beta[act_idx] += gamma * s_vec * w
        if event == "drop":
            beta[j_drop] = 0.0
        nz = np.flatnonzero(beta)
        if nz.size:
            c = c0 - gram.stack(nz) @ beta[nz]
            rss = y_sq - float((c0[nz] + c[nz]) @ beta[nz])
        else:
            c = c0.copy()
            rss = y_sq
        steps.append(
            PathStep(
                step_index=n_moves + 1,
                action=action,
                variable=event_var,
                sign=event_sign,
                active_after=tuple(active),
                signs_after=tuple(int(signs[i]) for i in active),
                gamma=float(gamma),
                C_max=C_hat,
                A=float(A),
                beta=beta.copy(),
                rss=float(rss),
                T=float(np.abs(beta).sum()),
                projection_dropped=proj,
            )
        )
        if event == "drop":
            pending = ("drop", j_drop, signs[j_drop])
        elif event == "join":
            pending = ("add", j_next, s_next)
        else:
            break
    return make_path()


def fit_path(design, variant="lars", *, max_steps=None, stop_after=None,
             jitter_seed=None):
    """Fit a coefficient path on a standardized design.

    ``variant`` selects the event rules: "lars" (additions only), "lasso"
    (sign-consistency drops), "stagewise" (cone projections), or
    "positive-lasso".  ``max_steps`` bounds the move count (default ``8 m``;
    exceeding it raises :class:`MaxStepsExceeded`).  ``stop_after``
    truncates the walk after that many moves without error.

    Ties are resolved to the lowest variable index with a
    :class:`TieWarning` unless ``jitter_seed`` is given, in which case the
    fit restarts (up to three times) with a centered uniform perturbation of
    the response at relative scale 1e-9.
    """
    kind = _normalize_variant(variant)
    if jitter_seed is None:
        return _fit_once(design, kind, max_steps, stop_after, tie_mode="warn")
    rng = np.random.default_rng(jitter_seed)
    scale = 1e-9 * float(np.linalg.norm(design.response))
    work = design
    for _ in range(3):
        try:
            return _fit_once(work, kind, max_steps, stop_after, tie_mode="raise")
        except _TieRestart:
            noise = rng.uniform(-1.0, 1.0, design.n) * scale
            if design.centered:
                noise -= noise.mean()
            work = replace(design, response=design.response + noise)
    return _fit_once(work, kind, max_steps, stop_after, tie_mode="warn")


def interpolate(path, t):
    """Coefficients at coefficient-magnitude budget ``t``.

    Linear interpolation in T = sum |beta_j| between the two bracketing
    vertices; exact at vertices.  ``t`` must lie in [0, path.t_max] up to a
    small slack, otherwise :class:`TOutOfRange` is raised.
    """
    steps = path.steps
    Ts = np.array([s.T for s in steps])
    t_end = float(Ts[-1])
    slack = 1e-12 * max(1.0, t_end)
    if t < -slack or t > t_end + slack:
        raise TOutOfRange(f"t={t!r} outside [0, {t_end!r}]")
    t = min(max(float(t), 0.0), t_end)
    diffs = np.diff(Ts)
    if np.all(diffs >= 0):
        hi = int(np.searchsorted(Ts, t, side="left"))
        if hi == 0:
            return steps[0].beta.copy()
    else:
        # T can decrease after a drop; take the first bracketing segment.
        hi = None
        for i in range(1, len(steps)):
            lo_t, hi_t = Ts[i - 1], Ts[i]
            if min(lo_t, hi_t) - slack <= t <= max(lo_t, hi_t) + slack:
                hi = i
                break
        if hi is None:
            raise TOutOfRange(f"t={t!r} not bracketed by any path segment")
    lo = hi - 1
    span = Ts[hi] - Ts[lo]
    theta = 0.0 if span == 0 else (t - Ts[lo]) / span
    return (1.0 - theta) * steps[lo].beta + theta * steps[hi].beta
