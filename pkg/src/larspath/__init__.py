"""Piecewise-linear coefficient paths for linear regression.

Fits the full solution path of least-angle style active-set walks,
including the lasso modification (coefficient sign crossings remove
variables), the idealized forward-stagewise limit (direction projected
into the active sign cone), and the nonnegative-coefficient restriction.
Ships risk estimation on top of the fitted paths (Cp with the df = k rule,
bootstrap degrees of freedom), slow independent oracles for verification,
and a small CLI.

Hot kernels run through a compiled extension when it is available; the
package falls back to pure-Python implementations with identical results.
"""

from .core import (
    EquiangularBasis,
    Path,
    PathStep,
    compute_equiangular,
    final_gamma,
    fit_path,
    interpolate,
    next_join,
)
from .datasets import diabetes_design, load_diabetes
from .dataio import read_csv, write_path_csv
from .errors import (
    ConstantColumn,
    DegenerateColumn,
    DimensionMismatch,
    EmptyData,
    EmptyFace,
    IndexOutOfRange,
    LarsError,
    MaxIterations,
    MaxStepsExceeded,
    MissingResponse,
    NoPositiveCandidate,
    NonNumericCell,
    ParseError,
    StalledPath,
    TieWarning,
    TOutOfRange,
    Underdetermined,
    VariantMismatch,
    WrongColumnCount,
)
from .kernels import HAVE_EXTENSION, backend_name
from .linalg import (
    CholeskyFactor,
    cholesky_append,
    cholesky_drop,
    nnls_inner_loop,
    solve_gram,
)
from .model_select import (
    CpReport,
    DfEstimate,
    SimulationResult,
    bootstrap_df,
    cp_curve,
    hybrid_r2,
    lars_fitted_values,
    lasso_df_by_support,
    run_simulation_study,
    sigma2_full_ols,
)
from .oracles import (
    OrderStatistics,
    epsilon_stagewise,
    forward_selection,
    lasso_at_t,
    soft_threshold_path,
)
from .preprocess import (
    StandardizedDesign,
    from_unit_columns,
    quadratic_expand,
    standardize,
    to_original_units,
)
from .variants import (
    LARS,
    LASSO,
    POSITIVE_LASSO,
    STAGEWISE,
    VariantPolicy,
    apply_lasso_modification,
    lasso_drop_candidate,
    main_effects_first,
    positive_lasso_step,
    stagewise_direction,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "HAVE_EXTENSION",
    "backend_name",
    # designs
    "StandardizedDesign",
    "standardize",
    "from_unit_columns",
    "to_original_units",
    "quadratic_expand",
    # paths
    "EquiangularBasis",
    "PathStep",
    "Path",
    "compute_equiangular",
    "next_join",
    "final_gamma",
    "fit_path",
    "interpolate",
    # variants
    "VariantPolicy",
    "LARS",
    "LASSO",
    "STAGEWISE",
    "POSITIVE_LASSO",
    "lasso_drop_candidate",
    "apply_lasso_modification",
    "stagewise_direction",
    "positive_lasso_step",
    "main_effects_first",
    # factors
    "CholeskyFactor",
    "cholesky_append",
    "cholesky_drop",
    "solve_gram",
    "nnls_inner_loop",
    # oracles
    "OrderStatistics",
    "soft_threshold_path",
    "epsilon_stagewise",
    "lasso_at_t",
    "forward_selection",
    # model selection
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
    # data plumbing
    "read_csv",
    "write_path_csv",
    "load_diabetes",
    "diabetes_design",
    # errors
    "LarsError",
    "DegenerateColumn",
    "IndexOutOfRange",
    "EmptyFace",
    "ConstantColumn",
    "DimensionMismatch",
    "WrongColumnCount",
    "NoPositiveCandidate",
    "MaxStepsExceeded",
    "StalledPath",
    "TOutOfRange",
    "VariantMismatch",
    "Underdetermined",
    "MaxIterations",
    "ParseError",
    "MissingResponse",
    "NonNumericCell",
    "EmptyData",
    "TieWarning",
]
