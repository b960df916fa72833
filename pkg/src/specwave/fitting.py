"""Least-squares fitting of polynomial filter coefficients.

Two model classes share one parameterization (a coefficient table of shape
``(rows, order + 1)``):

* ``plain`` — the prediction is the polynomial filter applied once,
  ``sum_k c_k p_k(shift(L)) @ x`` (a single coefficient row; linear in the
  coefficients, so the problem is convex).
* ``hyperbolic`` — the prediction is the final state of a leapfrog run whose
  acceleration operator is the polynomial filter (one shared row or one row
  per step; the prediction is polynomial of degree ``steps`` in the
  coefficients).

Gradients are exact adjoints derived from the recurrences, not autodiff and
not finite differences; the finite-difference comparison lives in the tests.
Optimization is full-batch Adam with early stopping on the training loss,
returning the best coefficients seen.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import FitDivergedError
from .graphs import SparseSymMatrix
from .integrator import IntegratorConfig, coefficient_rows
from .polynomials import (
    PolynomialBasis,
    _stack_core,
    coefficient_adjoint,
    effective_coefficients,
    operator_stack,
)
from .validation import as_float_array, as_node_signal

__all__ = [
    "ModelSpec",
    "FitConfig",
    "FitReport",
    "forward",
    "loss",
    "r2_score",
    "gradient",
    "fit",
]


@dataclass(frozen=True)
class ModelSpec:
    """What is being fitted: mode, polynomial family, order, time stepping.

    Parameters
    ----------
    mode : str
        ``"plain"`` or ``"hyperbolic"``.
    basis : PolynomialBasis
    order : int
        Highest polynomial order (coefficients cover 0..order).
    integrator : IntegratorConfig or None
        Required in hyperbolic mode (its basis must match ``basis``);
        must be None in plain mode.
    learn_gains : bool
        Hyperbolic only: additionally learn two scalars scaling the initial
        state and the initial velocity (both derived from the input signal;
        they start at the fixed default maps, 1 and 0).
    """

    mode: str
    basis: PolynomialBasis
    order: int
    integrator: IntegratorConfig | None = None
    learn_gains: bool = False

    def __post_init__(self):
        if self.mode not in ("plain", "hyperbolic"):
            raise ValueError(f"mode must be 'plain' or 'hyperbolic', got {self.mode!r}")
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")
        if self.mode == "hyperbolic":
            if self.integrator is None:
                raise ValueError("hyperbolic mode requires an IntegratorConfig")
            if self.integrator.basis != self.basis:
                raise ValueError("integrator basis must match the model basis")
        else:
            if self.integrator is not None:
                raise ValueError("plain mode takes no IntegratorConfig")
            if self.learn_gains:
                raise ValueError("input gains only exist in hyperbolic mode")

    @property
    def rows(self) -> int:
        """Coefficient table rows: 1 in plain/shared mode, steps otherwise."""
        if self.mode == "plain":
            return 1
        return coefficient_rows(self.integrator)


@dataclass(frozen=True)
class FitConfig:
    """Optimizer settings: full-batch Adam with early stopping.

    ``learning_rate`` 0.05, ``max_iter`` 2000, ``patience`` 100 and Gaussian
    init of scale 0.01 are the package defaults; the seed feeds a PCG64
    generator so runs are exactly reproducible.
    """

    learning_rate: float = 0.05
    max_iter: int = 2000
    patience: int = 100
    init_scale: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.patience < 1:
            raise ValueError(f"patience must be >= 1, got {self.patience}")
        if not self.init_scale >= 0:
            raise ValueError(f"init_scale must be >= 0, got {self.init_scale}")


@dataclass(frozen=True, eq=False)
class FitReport:
    """Outcome of a fit.

    Attributes
    ----------
    final_loss : float
        Best mean squared error over the dataset seen during optimization.
    r2 : float
        Coefficient of determination of the best model, pooled over all
        dataset entries.
    iterations : int
        Iterations actually run (equals the loss trace length).
    coefficients : ndarray
        Best coefficient table, shape (rows, order + 1).
    loss_trace : ndarray
        Loss evaluated at the start of every iteration.
    gains : ndarray or None
        Best (state gain, velocity gain) pair when those were learned.
    """

    final_loss: float
    r2: float
    iterations: int
    coefficients: np.ndarray
    loss_trace: np.ndarray
    gains: np.ndarray | None = None


def _check_table(spec: ModelSpec, coeffs) -> np.ndarray:
    table = as_float_array(coeffs, "coeffs")
    if table.ndim == 1:
        table = table[None, :]
    if table.shape != (spec.rows, spec.order + 1):
        raise ValueError(
            f"coefficient table must have shape ({spec.rows}, {spec.order + 1}), got {table.shape}"
        )
    return table


def _effective_row(spec: ModelSpec, table: np.ndarray, step_index: int) -> np.ndarray:
    row = table[0] if table.shape[0] == 1 else table[step_index]
    return effective_coefficients(spec.basis, row)


def _combine(c: np.ndarray, stack: np.ndarray) -> np.ndarray:
    return np.tensordot(c, stack, axes=(0, 0))


def _hyperbolic_states(
    spec: ModelSpec, table: np.ndarray, gains, L: SparseSymMatrix, x: np.ndarray
) -> list[np.ndarray]:
    """All grid states X_0 .. X_m of the leapfrog run (kept for the adjoint pass)."""
    cfg = spec.integrator
    g0, g1 = (1.0, 0.0) if gains is None else (float(gains[0]), float(gains[1]))
    x0 = g0 * x
    tau2 = cfg.tau**2
    states = [x0]
    accel = _combine(_effective_row(spec, table, 0), _stack_core(spec.basis, spec.order, L, x0))
    states.append(cfg.tau * (g1 * x) + x0 + 0.5 * tau2 * accel)
    for j in range(1, cfg.steps):
        accel = _combine(
            _effective_row(spec, table, j), _stack_core(spec.basis, spec.order, L, states[j])
        )
        states.append(2.0 * states[j] + tau2 * accel - states[j - 1])
    return states


def forward(spec: ModelSpec, coeffs, L: SparseSymMatrix, x, gains=None) -> np.ndarray:
    """Predict the filtered signal for one input ``x`` (shape (n,) or (n, d))."""
    table = _check_table(spec, coeffs)
    x = as_node_signal(x, L.n)
    if spec.mode == "plain":
        stack = operator_stack(spec.basis, spec.order, L, x)
        return _combine(_effective_row(spec, table, 0), stack)
    return _hyperbolic_states(spec, table, gains, L, x)[-1]


def loss(pred, target) -> float:
    """Squared error ``sum((pred - target)^2)``."""
    pred = as_float_array(pred, "pred")
    target = as_float_array(target, "target")
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch: pred {pred.shape} vs target {target.shape}")
    diff = pred - target
    return float(np.sum(diff * diff))


def r2_score(pred, target) -> float:
    """Coefficient of determination; 1 is perfect, can be arbitrarily negative.

    Raises
    ------
    ValueError
        If the target has zero variance (the score is undefined there).
    """
    pred = as_float_array(pred, "pred")
    target = as_float_array(target, "target")
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch: pred {pred.shape} vs target {target.shape}")
    ss_tot = float(np.sum((target - target.mean()) ** 2))
    if ss_tot == 0.0:
        raise ValueError("r2 score undefined: target has zero variance")
    return 1.0 - loss(pred, target) / ss_tot


def _hyperbolic_backward(
    spec: ModelSpec,
    table: np.ndarray,
    gains,
    L: SparseSymMatrix,
    x: np.ndarray,
    target: np.ndarray,
    states: list[np.ndarray],
):
    """Adjoint sweep through stored leapfrog states; returns (grad_table, grad_gains)."""
    cfg = spec.integrator
    tau2 = cfg.tau**2
    m = cfg.steps
    grad_eff = np.zeros((table.shape[0], spec.order + 1))

    # adj_next = dloss/dX_{j+1}, adj_next2 = dloss/dX_{j+2}. The basis stack
    # of the adjoint serves double duty: its inner products with X_j give the
    # coefficient gradient (the shifted operators are symmetric), and its
    # combination with the coefficient row advances the adjoint.
    adj_next = 2.0 * (states[m] - target)
    adj_next2 = np.zeros_like(adj_next)
    for j in range(m - 1, 0, -1):
        stack = _stack_core(spec.basis, spec.order, L, adj_next)
        row = 0 if table.shape[0] == 1 else j
        grad_eff[row] += tau2 * (stack.reshape(spec.order + 1, -1) @ states[j].ravel())
        pulled = _combine(_effective_row(spec, table, j), stack)
        adj_next, adj_next2 = 2.0 * adj_next + tau2 * pulled - adj_next2, adj_next
    stack = _stack_core(spec.basis, spec.order, L, adj_next)
    grad_eff[0] += 0.5 * tau2 * (stack.reshape(spec.order + 1, -1) @ states[0].ravel())
    grad_table = np.stack([coefficient_adjoint(spec.basis, row) for row in grad_eff])

    if not spec.learn_gains:
        return grad_table, None
    pulled0 = _combine(_effective_row(spec, table, 0), stack)
    adj0 = adj_next + 0.5 * tau2 * pulled0 - adj_next2
    grad_gains = np.array(
        [float(np.sum(adj0 * x)), cfg.tau * float(np.sum(adj_next * x))]
    )
    return grad_table, grad_gains


def gradient(spec: ModelSpec, coeffs, L: SparseSymMatrix, x, target, gains=None):
    """Exact gradient of :func:`loss` w.r.t. the coefficient table (and gains).

    Returns
    -------
    grad_coeffs : ndarray, same shape as the coefficient table
    grad_gains : ndarray of shape (2,) or None
        Present exactly when ``spec.learn_gains`` is set.
    """
    table = _check_table(spec, coeffs)
    x = as_node_signal(x, L.n)
    target = as_node_signal(target, L.n, "target")
    if target.shape != x.shape:
        raise ValueError(f"shape mismatch: x {x.shape} vs target {target.shape}")

    if spec.mode == "plain":
        stack = operator_stack(spec.basis, spec.order, L, x)
        residual = 2.0 * (_combine(_effective_row(spec, table, 0), stack) - target)
        flat = stack.reshape(spec.order + 1, -1) @ residual.ravel()
        return coefficient_adjoint(spec.basis, flat)[None, :], None

    states = _hyperbolic_states(spec, table, gains, L, x)
    return _hyperbolic_backward(spec, table, gains, L, x, target, states)


def _dataset(spec: ModelSpec, L: SparseSymMatrix, pairs) -> list[tuple[np.ndarray, np.ndarray]]:
    data = []
    for x, y in pairs:
        x = as_node_signal(x, L.n)
        y = as_node_signal(y, L.n, "target")
        if y.shape != x.shape:
            raise ValueError(f"shape mismatch in dataset: {x.shape} vs {y.shape}")
        data.append((x, y))
    if not data:
        raise ValueError("dataset is empty")
    return data


def fit(spec: ModelSpec, config: FitConfig, pairs, L: SparseSymMatrix) -> FitReport:
    """Fit coefficients to (signal, target) pairs by full-batch Adam.

    The loss is the mean over pairs of the squared error. Iterations stop at
    ``config.max_iter`` or once the best loss has not improved for
    ``config.patience`` iterations; the best-seen parameters are returned.
    Coefficients start from seeded Gaussian noise (PCG64), gains — when
    learned — from the fixed default maps (1, 0).

    Raises
    ------
    FitDivergedError
        If the loss turns non-finite.
    """
    data = _dataset(spec, L, pairs)
    count = len(data)
    rng = np.random.Generator(np.random.PCG64(config.seed))
    params = [rng.normal(0.0, config.init_scale, size=(spec.rows, spec.order + 1))]
    if spec.learn_gains:
        params.append(np.array([1.0, 0.0]))

    # Plain-mode predictions are linear in the coefficients, so the per-pair
    # basis stacks never change: precompute them once.
    plain_stacks = None
    if spec.mode == "plain":
        plain_stacks = [operator_stack(spec.basis, spec.order, L, x) for x, _ in data]

    def evaluate(current):
        total = 0.0
        grads = [np.zeros_like(p) for p in current]
        gains = current[1] if spec.learn_gains else None
        for i, (x, y) in enumerate(data):
            if plain_stacks is not None:
                c = effective_coefficients(spec.basis, current[0][0])
                pred = _combine(c, plain_stacks[i])
                residual = 2.0 * (pred - y)
                flat = plain_stacks[i].reshape(spec.order + 1, -1) @ residual.ravel()
                grads[0] += coefficient_adjoint(spec.basis, flat)[None, :] / count
            else:
                states = _hyperbolic_states(spec, current[0], gains, L, x)
                pred = states[-1]
                g_table, g_gains = _hyperbolic_backward(
                    spec, current[0], gains, L, x, y, states
                )
                grads[0] += g_table / count
                if spec.learn_gains:
                    grads[1] += g_gains / count
            diff = pred - y
            # raw sum, bypassing loss()'s finite-input validation: a diverged
            # prediction must flow into the non-finite check below, which
            # reports it as FitDivergedError rather than an input error
            total += float(np.sum(diff * diff)) / count
        return total, grads

    moment1 = [np.zeros_like(p) for p in params]
    moment2 = [np.zeros_like(p) for p in params]
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    best_loss = np.inf
    best_params = [p.copy() for p in params]
    since_best = 0
    trace = []

    # Divergence is handled explicitly (the two raises below), so the
    # intermediate overflow warnings on that path are pure noise.
    with np.errstate(over="ignore", invalid="ignore"):
        for iteration in range(1, config.max_iter + 1):
            if not all(np.all(np.isfinite(p)) for p in params):
                raise FitDivergedError(
                    f"parameters became non-finite at iteration {iteration}", iteration
                )
            value, grads = evaluate(params)
            if not np.isfinite(value):
                raise FitDivergedError(
                    f"loss became non-finite at iteration {iteration}", iteration
                )
            trace.append(value)
            if value < best_loss:
                best_loss = value
                best_params = [p.copy() for p in params]
                since_best = 0
            else:
                since_best += 1
                if since_best >= config.patience:
                    break
            for i, grad in enumerate(grads):
                moment1[i] = beta1 * moment1[i] + (1.0 - beta1) * grad
                moment2[i] = beta2 * moment2[i] + (1.0 - beta2) * grad * grad
                hat1 = moment1[i] / (1.0 - beta1**iteration)
                hat2 = moment2[i] / (1.0 - beta2**iteration)
                params[i] = params[i] - config.learning_rate * hat1 / (np.sqrt(hat2) + eps)

    gains_best = best_params[1] if spec.learn_gains else None
    preds = [
        forward(spec, best_params[0], L, x, gains=gains_best).ravel() for x, _ in data
    ]
    pooled_pred = np.concatenate(preds)
    pooled_target = np.concatenate([y.ravel() for _, y in data])
    return FitReport(
        final_loss=best_loss,
        r2=r2_score(pooled_pred, pooled_target),
        iterations=len(trace),
        coefficients=best_params[0],
        loss_trace=np.asarray(trace),
        gains=gains_best,
    )
