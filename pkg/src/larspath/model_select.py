"""Risk estimation: degrees of freedom, Cp curves, hybrid refits, and the
resampled prediction-error comparison of the path variants.

The bootstrap df machinery treats a fitting procedure as a black box
``y* -> fitted values`` and estimates, per step, the sum of covariances
between fitted and observed values.  For the plain path fitter that
estimate tracks the step index closely, which is what justifies the
``df = k`` rule used by the Cp curve.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import t as student_t

from .core import fit_path
from .errors import DimensionMismatch, Underdetermined, VariantMismatch
from .oracles import forward_selection
from .preprocess import standardize, quadratic_expand

__all__ = [
    "CpReport",
    "DfEstimate",
    "SimulationResult",
    "sigma2_full_ols",
    "cp_curve",
    "lars_fitted_values",
    "bootstrap_df",
    "lasso_df_by_support",
    "hybrid_r2",
    "run_simulation_study",
]


@dataclass(frozen=True)
class CpReport:
    """Per-step risk estimates ``rss_k / sigma2 - n + 2 df_k``."""

    sigma2_bar: float
    cp: np.ndarray
    argmin_k: int
    df_used: np.ndarray


@dataclass(frozen=True)
class DfEstimate:
    """Bootstrap degrees of freedom at one step, with a group-based CI."""

    k: int
    df_hat: float
    ci_low: float
    ci_high: float
    B: int
    groups: int


@dataclass(frozen=True)
class SimulationResult:
    """Average proportion of true-signal variance explained, per method."""

    true_R2: float
    pe_curves: dict
    pe_sd: dict
    nonzero_axis: dict
    replications: int
    n_steps: int


def _full_ols(design):
    beta, *_ = np.linalg.lstsq(design.columns, design.response, rcond=None)
    mu_bar = design.columns @ beta
    return mu_bar, float(np.sum((design.response - mu_bar) ** 2))


def sigma2_full_ols(design):
    """Residual variance of the full least squares fit.

    The divisor is n - m - 1: one degree of freedom per predictor plus one
    for the centering step that absorbed the intercept.
    """
    n, m = design.n, design.m
    if n <= m + 1:
        raise Underdetermined(f"need n > m + 1, got n={n}, m={m}")
    _, rss = _full_ols(design)
    return rss / (n - m - 1)


def cp_curve(path, sigma2, df_rule="simple-k", *, allow_variant=False):
    """Risk estimate per step using the df = k rule.

    The rule is calibrated for the plain additive walk; applying it to a
    path with drops mislabels the df, so other variants are rejected unless
    ``allow_variant`` is set.
    """
    if df_rule != "simple-k":
        raise ValueError(f"unknown df rule {df_rule!r}")
    if path.variant != "lars" and not allow_variant:
        raise VariantMismatch(
            f"df = k rule is calibrated for the plain variant, got {path.variant!r}"
        )
    n = path.design.n
    K = path.n_steps
    df_used = np.arange(K + 1, dtype=float)
    rss = np.array([s.rss for s in path.steps])
    cp = rss / float(sigma2) - n + 2.0 * df_used
    return CpReport(
        sigma2_bar=float(sigma2),
        cp=cp,
        argmin_k=int(np.argmin(cp)),
        df_used=df_used,
    )


def lars_fitted_values(design, k_max, variant="lars"):
    """Estimator factory for :func:`bootstrap_df`.

    Returns a callable mapping a response vector to the ``(k_max + 1, n)``
    matrix of fitted values at every vertex 0..k_max, padding with the final
    vertex when the path terminates early.
    """
    X = design.columns

    def estimator(y_star):
        p = fit_path(
            replace(design, response=y_star), variant,
            stop_after=k_max, max_steps=8 * design.m + k_max,
        )
        betas = np.array([s.beta for s in p.steps])
        if betas.shape[0] < k_max + 1:
            pad = np.repeat(betas[-1:], k_max + 1 - betas.shape[0], axis=0)
            betas = np.vstack([betas, pad])
        return betas @ X.T

    return estimator


def _draw(rng, mu_bar, sigma, residuals, resampling):
    n = mu_bar.shape[0]
    if resampling == "normal":
        return mu_bar + sigma * rng.standard_normal(n)
    if resampling == "residual":
        return mu_bar + residuals[rng.integers(0, n, n)]
    raise ValueError(f"unknown resampling {resampling!r}")


def bootstrap_df(design, estimator, B=100, groups=10, seed=0, *,
                 resampling="normal"):
    """Bootstrap estimate of degrees of freedom per step.

    Draws ``B`` responses around the full-model fit, applies ``estimator``
    to each, and accumulates per-observation covariances between fitted and
    drawn values.  Replicates are split into ``groups`` equal groups; the
    reported df is the mean of the per-group estimates with a Student-t 95%
    interval across groups.

    ``resampling="residual"`` draws errors by resampling the full-model
    residuals instead of normal deviates.
    """
    if B % groups != 0 or B < 2 * groups:
        raise DimensionMismatch(
            f"B={B} must be a multiple of groups={groups}, at least 2 per group"
        )
    n = design.n
    mu_bar, rss = _full_ols(design)
    sigma2 = sigma2_full_ols(design)
    sigma = math.sqrt(sigma2)
    residuals = design.response - mu_bar
    per_group = B // groups

    sum_fy = None
    for b in range(B):
        rng = np.random.default_rng([seed, b])
        y_star = _draw(rng, mu_bar, sigma, residuals, resampling)
        fits = np.asarray(estimator(y_star))
        if fits.ndim == 1:
            fits = fits[None, :]
        if sum_fy is None:
            R = fits.shape[0]
            sum_fy = np.zeros((groups, R, n))
            sum_f = np.zeros((groups, R, n))
            sum_y = np.zeros((groups, n))
        g = b // per_group
        sum_fy[g] += fits * y_star
        sum_f[g] += fits
        sum_y[g] += y_star

    cov = (sum_fy - sum_f * (sum_y[:, None, :] / per_group)) / (per_group - 1)
    df_groups = cov.sum(axis=2) / sigma2
    df_hat = df_groups.mean(axis=0)
    spread = df_groups.std(axis=0, ddof=1) / math.sqrt(groups)
    crit = float(student_t.ppf(0.975, groups - 1))
    return [
        DfEstimate(
            k=r,
            df_hat=float(df_hat[r]),
            ci_low=float(df_hat[r] - crit * spread[r]),
            ci_high=float(df_hat[r] + crit * spread[r]),
            B=B,
            groups=groups,
        )
        for r in range(df_hat.shape[0])
    ]


def lasso_df_by_support(design, B=100, seed=0, groups=10, *,
                        resampling="normal"):
    """Bootstrap df of the lasso-rule fit indexed by support size.

    For each draw the path is refitted and, for every support size k, the
    last vertex whose coefficient support has exactly k nonzeros is taken as
    the k-th estimate.  Support sizes a draw never visits are skipped for
    that draw.
    """
    if B % groups != 0 or B < 2 * groups:
        raise DimensionMismatch(
            f"B={B} must be a multiple of groups={groups}, at least 2 per group"
        )
    n, m = design.n, design.m
    mu_bar, _ = _full_ols(design)
    sigma2 = sigma2_full_ols(design)
    sigma = math.sqrt(sigma2)
    residuals = design.response - mu_bar
    per_group = B // groups
    X = design.columns
    R = m + 1

    sum_fy = np.zeros((groups, R, n))
    sum_f = np.zeros((groups, R, n))
    sum_y = np.zeros((groups, R, n))
    count = np.zeros((groups, R), dtype=int)
    for b in range(B):
        rng = np.random.default_rng([seed, b])
        y_star = _draw(rng, mu_bar, sigma, residuals, resampling)
        path = fit_path(replace(design, response=y_star), "lasso")
        g = b // per_group
        last_at = {}
        for i, s in enumerate(path.steps):
            last_at[int(np.count_nonzero(s.beta))] = i
        for k, i in last_at.items():
            fits = X @ path.steps[i].beta
            sum_fy[g, k] += fits * y_star
            sum_f[g, k] += fits
            sum_y[g, k] += y_star
            count[g, k] += 1

    out = []
    crit = float(student_t.ppf(0.975, groups - 1))
    for k in range(R):
        cnt = count[:, k]
        ok = cnt >= 2
        if ok.sum() < 2:
            continue
        c = cnt[ok][:, None].astype(float)
        cov = (sum_fy[ok, k] - sum_f[ok, k] * sum_y[ok, k] / c) / (c - 1)
        df_groups = cov.sum(axis=1) / sigma2
        df_hat = float(df_groups.mean())
        spread = float(df_groups.std(ddof=1)) / math.sqrt(int(ok.sum()))
        out.append(
            DfEstimate(
                k=k,
                df_hat=df_hat,
                ci_low=df_hat - crit * spread,
                ci_high=df_hat + crit * spread,
                B=int(cnt.sum()),
                groups=int(ok.sum()),
            )
        )
    return out


def hybrid_r2(path, k):
    """Fit quality of the k-step path estimate against its refitted version.

    Returns ``(r2_path, r2_refit, rho)`` where the refit is ordinary least
    squares on the step's active set and ``rho`` is the ratio of the step
    length actually travelled to the full travel distance of that step.
    """
    if path.variant != "lars":
        raise VariantMismatch(f"requires the plain variant, got {path.variant!r}")
    if not 1 <= k <= path.n_steps:
        raise DimensionMismatch(f"k={k} outside 1..{path.n_steps}")
    tss = path.steps[0].rss
    step = path.steps[k]
    r2_path = 1.0 - step.rss / tss
    cols = path.design.columns[:, list(step.active_after)]
    coef, *_ = np.linalg.lstsq(cols, path.design.response, rcond=None)
    rss_refit = float(np.sum((path.design.response - cols @ coef) ** 2))
    r2_refit = 1.0 - rss_refit / tss
    rho = step.gamma / (step.C_max / step.A)
    return r2_path, r2_refit, float(rho)


def run_simulation_study(raw_columns, raw_response, seed=0, replications=100,
                         n_steps=40, *, binary_column=1):
    """Resampled comparison of the variants on the quadratic design.

    Builds the 64-column quadratic design, takes the 10-step plain fit as
    the true signal, and for each replicate resamples residuals onto that
    signal and refits every method.  Reports, per method and step, the mean
    and standard deviation over replicates of the proportion of true-signal
    variance explained, plus the average nonzero count per step.
    """
    Xq, labels = quadratic_expand(raw_columns, binary_column)
    design = standardize(Xq, raw_response, labels)
    base = fit_path(design, "lars", stop_after=10)
    mu = design.columns @ base.steps[-1].beta
    eps = design.response - mu
    mu_sq = float(mu @ mu)
    true_R2 = mu_sq / (mu_sq + float(eps @ eps))

    n = design.n
    methods = ("lars", "lasso", "stagewise", "forward-selection")
    pe = {name: np.zeros((replications, n_steps + 1)) for name in methods}
    nnz = {name: np.zeros((replications, n_steps + 1)) for name in methods}

    for b in range(replications):
        rng = np.random.default_rng([seed, b])
        eps_star = eps[rng.integers(0, n, n)]
        eps_star = eps_star - eps_star.mean()
        d_star = replace(design, response=mu + eps_star)
        for name in methods:
            if name == "forward-selection":
                p = forward_selection(d_star, n_steps)
            else:
                p = fit_path(d_star, name, stop_after=n_steps,
                             max_steps=8 * design.m + n_steps)
            betas = np.array([s.beta for s in p.steps])
            if betas.shape[0] < n_steps + 1:
                pad = np.repeat(betas[-1:], n_steps + 1 - betas.shape[0], axis=0)
                betas = np.vstack([betas, pad])
            fitted = betas @ design.columns.T
            pe[name][b] = 1.0 - np.sum((fitted - mu) ** 2, axis=1) / mu_sq
            nnz[name][b] = np.count_nonzero(betas, axis=1)

    return SimulationResult(
        true_R2=true_R2,
        pe_curves={name: pe[name].mean(axis=0) for name in methods},
        pe_sd={name: pe[name].std(axis=0, ddof=1) for name in methods},
        nonzero_axis={name: nnz[name].mean(axis=0) for name in methods},
        replications=replications,
        n_steps=n_steps,
    )
