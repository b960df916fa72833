"""Scikit-learn estimator wrapping the coefficient-fitting machinery.

The estimator works on a fixed graph: rows of ``X`` are input signals (one
value per node), rows of ``y`` are the desired filtered signals. ``fit`` learns
one coefficient table for the whole batch, ``predict`` applies the learned
filter, and ``score`` reports the pooled coefficient of determination. Being a
``BaseEstimator`` it composes with clone, ``get_params``/``set_params``,
pipelines and searches.
"""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from . import fitting
from .graphs import Graph, combinatorial_laplacian, normalized_laplacian
from .integrator import IntegratorConfig
from .polynomials import PolynomialBasis
from .validation import as_sample_matrix

__all__ = ["SpectralFilterRegressor"]


class SpectralFilterRegressor(RegressorMixin, BaseEstimator):
    """Learn a polynomial spectral filter on a fixed graph.

    Parameters
    ----------
    graph : Graph
        The graph the signals live on.
    laplacian : str, default "normalized"
        ``"normalized"`` (spectrum in [0, 2]) or ``"combinatorial"``.
    mode : str, default "plain"
        ``"plain"`` applies the polynomial filter directly; ``"hyperbolic"``
        uses it as the acceleration operator of a leapfrog run.
    basis : str, default "chebyshev"
        Polynomial family name.
    order : int, default 10
        Highest polynomial order.
    shift : str or None
        Spectral shift override; ``None`` picks the family default.
    jacobi_a, jacobi_b : float, default 0.0
        Jacobi family parameters (> -1 each).
    tau : float, default 0.5
        Leapfrog step size (hyperbolic mode).
    steps : int, default 4
        Leapfrog step count (hyperbolic mode).
    sharing : str, default "shared"
        Coefficient layout across steps: ``"shared"`` or ``"per-step"``.
    learn_gains : bool, default False
        Hyperbolic mode: also learn scalar gains on the initial state and
        velocity maps.
    learning_rate, max_iter, patience, init_scale, seed
        Optimizer settings; see :class:`specwave.fitting.FitConfig`.

    Attributes
    ----------
    coef_ : ndarray of shape (rows, order + 1)
        Fitted coefficient table.
    gains_ : ndarray of shape (2,) or None
        Fitted input gains when ``learn_gains`` is set.
    n_iter_ : int
        Optimizer iterations run.
    report_ : FitReport
        Full fit outcome including the loss trace.

    Examples
    --------
    >>> from specwave import grid_graph
    >>> g = grid_graph(4, 4)
    >>> est = SpectralFilterRegressor(graph=g, order=3, max_iter=200)
    >>> est.fit(x[None, :], y[None, :]).predict(x[None, :])  # doctest: +SKIP
    """

    def __init__(
        self,
        graph: Graph | None = None,
        laplacian: str = "normalized",
        mode: str = "plain",
        basis: str = "chebyshev",
        order: int = 10,
        shift: str | None = None,
        jacobi_a: float = 0.0,
        jacobi_b: float = 0.0,
        tau: float = 0.5,
        steps: int = 4,
        sharing: str = "shared",
        learn_gains: bool = False,
        learning_rate: float = 0.05,
        max_iter: int = 2000,
        patience: int = 100,
        init_scale: float = 0.01,
        seed: int = 0,
    ):
        self.graph = graph
        self.laplacian = laplacian
        self.mode = mode
        self.basis = basis
        self.order = order
        self.shift = shift
        self.jacobi_a = jacobi_a
        self.jacobi_b = jacobi_b
        self.tau = tau
        self.steps = steps
        self.sharing = sharing
        self.learn_gains = learn_gains
        self.learning_rate = learning_rate
        self.max_iter = max_iter
        self.patience = patience
        self.init_scale = init_scale
        self.seed = seed

    def _build_spec(self) -> fitting.ModelSpec:
        basis = PolynomialBasis(
            family=self.basis,
            shift=self.shift,
            jacobi_a=self.jacobi_a,
            jacobi_b=self.jacobi_b,
        )
        integrator = None
        if self.mode == "hyperbolic":
            integrator = IntegratorConfig(
                tau=self.tau, steps=self.steps, basis=basis, sharing=self.sharing
            )
        return fitting.ModelSpec(
            mode=self.mode,
            basis=basis,
            order=self.order,
            integrator=integrator,
            learn_gains=self.learn_gains,
        )

    def _laplacian_matrix(self):
        if not isinstance(self.graph, Graph):
            raise ValueError("graph parameter must be a Graph instance")
        if self.laplacian == "normalized":
            return normalized_laplacian(self.graph)
        if self.laplacian == "combinatorial":
            return combinatorial_laplacian(self.graph)
        raise ValueError(
            f"laplacian must be 'normalized' or 'combinatorial', got {self.laplacian!r}"
        )

    def fit(self, X, y):
        """Learn coefficients from signal rows ``X`` and target rows ``y``."""
        L = self._laplacian_matrix()
        X = as_sample_matrix(X, self.graph.n, "X")
        y = as_sample_matrix(y, self.graph.n, "y")
        if X.shape != y.shape:
            raise ValueError(f"X and y shapes differ: {X.shape} vs {y.shape}")
        spec = self._build_spec()
        config = fitting.FitConfig(
            learning_rate=self.learning_rate,
            max_iter=self.max_iter,
            patience=self.patience,
            init_scale=self.init_scale,
            seed=self.seed,
        )
        report = fitting.fit(spec, config, list(zip(X, y)), L)
        self.laplacian_ = L
        self.spec_ = spec
        self.report_ = report
        self.coef_ = report.coefficients
        self.gains_ = report.gains
        self.n_iter_ = report.iterations
        return self

    def predict(self, X):
        """Apply the fitted filter to each signal row."""
        check_is_fitted(self, "coef_")
        single = np.asarray(X).ndim == 1
        X = as_sample_matrix(X, self.graph.n, "X")
        preds = np.stack(
            [
                fitting.forward(self.spec_, self.coef_, self.laplacian_, x, gains=self.gains_)
                for x in X
            ]
        )
        return preds[0] if single else preds

    def score(self, X, y, sample_weight=None):
        """Pooled coefficient of determination over all entries of the batch."""
        check_is_fitted(self, "coef_")
        y = as_sample_matrix(y, self.graph.n, "y")
        pred = as_sample_matrix(self.predict(X), self.graph.n, "predictions")
        return fitting.r2_score(pred.ravel(), y.ravel())
