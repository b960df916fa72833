"""Polynomial spectral filters on graphs, with a wave-type leapfrog integrator.

The package has three layers:

* **Oracle** — exact spectral filtering through a self-contained symmetric
  eigensolver (:mod:`specwave.spectral`), plus graph containers and Laplacians
  (:mod:`specwave.graphs`). This is the slow, trusted route.
* **Fast route** — five polynomial filter bases applied through sparse
  matvec recurrences (:mod:`specwave.polynomials`), optionally driven through
  a leapfrog integrator for second-order node dynamics
  (:mod:`specwave.integrator`), with closed-form solution checks
  (:mod:`specwave.verifier`).
* **Learning** — least-squares coefficient fitting with exact adjoint
  gradients and full-batch Adam (:mod:`specwave.fitting`), wrapped in a
  scikit-learn estimator (:class:`specwave.SpectralFilterRegressor`), and a
  CLI harness (``specwave gen-grid | make-target | fit | verify | sweep``).

Randomness is always explicit: seeded numpy PCG64 generators, nothing global.
"""

from .estimator import SpectralFilterRegressor
from .exceptions import FitDivergedError, NumericalError
from .fitting import (
    FitConfig,
    FitReport,
    ModelSpec,
    fit,
    forward,
    gradient,
    loss,
    r2_score,
)
from .graphs import (
    Graph,
    SparseSymMatrix,
    build_graph,
    combinatorial_laplacian,
    grid_graph,
    normalized_laplacian,
    spmv,
)
from .integrator import (
    IntegratorConfig,
    IntegratorState,
    coefficient_rows,
    continuous_reference,
    init_state,
    run,
    step,
)
from .polynomials import (
    DEFAULT_SHIFTS,
    FAMILIES,
    SHIFTS,
    PolynomialBasis,
    apply_poly,
    cheb_interp_coeffs,
    cheb_interp_matrix,
    eval_scalar,
    to_scalar_filter,
)
from .spectral import (
    FILTER_NAMES,
    EigenDecomposition,
    ScalarFilter,
    eigendecompose,
    exact_filter,
    matrix_exponential,
    reference_filter,
)
from .verifier import (
    BlockSystem,
    CheckResult,
    FundamentalMatrix,
    VerificationReport,
    build_block_system,
    eigenstructure,
    expand_in_basis,
    fundamental_matrix,
    verify_theorems,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # graphs
    "Graph",
    "SparseSymMatrix",
    "build_graph",
    "grid_graph",
    "combinatorial_laplacian",
    "normalized_laplacian",
    "spmv",
    # spectral oracle
    "EigenDecomposition",
    "ScalarFilter",
    "FILTER_NAMES",
    "eigendecompose",
    "exact_filter",
    "reference_filter",
    "matrix_exponential",
    # polynomial bases
    "PolynomialBasis",
    "FAMILIES",
    "SHIFTS",
    "DEFAULT_SHIFTS",
    "eval_scalar",
    "apply_poly",
    "cheb_interp_coeffs",
    "cheb_interp_matrix",
    "to_scalar_filter",
    # integrator
    "IntegratorConfig",
    "IntegratorState",
    "coefficient_rows",
    "init_state",
    "step",
    "run",
    "continuous_reference",
    # verifier
    "BlockSystem",
    "FundamentalMatrix",
    "CheckResult",
    "VerificationReport",
    "build_block_system",
    "eigenstructure",
    "fundamental_matrix",
    "verify_theorems",
    "expand_in_basis",
    # fitting
    "ModelSpec",
    "FitConfig",
    "FitReport",
    "forward",
    "loss",
    "r2_score",
    "gradient",
    "fit",
    "SpectralFilterRegressor",
    # errors
    "NumericalError",
    "FitDivergedError",
]
