"""Leapfrog time stepping for second-order node dynamics driven by a graph operator.

The integrator advances ``d^2 X / dt^2 = P(L) X`` on a fixed time grid
``t_m = m * tau`` with the standard second-order three-term scheme:

    X(t_1)     = tau * Xdot(t_0) + (I + tau^2/2 * P) X(t_0)
    X(t_{m+1}) = (2 I + tau^2 * P) X(t_m) - X(t_{m-1})

where ``P`` is a polynomial in (a shifted) Laplacian built from a coefficient
table. Coefficients are either one shared row or one row per step; in per-step
mode the row applied while advancing from ``t_m`` is row ``m``, i.e. the
polynomial is evaluated at the step being left.

States are immutable; :func:`step` returns a fresh state, and a state whose
``step`` equals the configured step count is final.
"""

from dataclasses import dataclass

import numpy as np

from .graphs import SparseSymMatrix
from .polynomials import PolynomialBasis, apply_poly
from .spectral import eigendecompose
from .validation import as_float_array, as_node_signal

__all__ = [
    "IntegratorConfig",
    "IntegratorState",
    "coefficient_rows",
    "init_state",
    "step",
    "run",
    "continuous_reference",
]


@dataclass(frozen=True)
class IntegratorConfig:
    """Time grid and coefficient layout for a leapfrog run.

    Parameters
    ----------
    tau : float
        Step size, > 0.
    steps : int
        Number of grid intervals m >= 1; a run returns the state at t_m.
    basis : PolynomialBasis
        Polynomial family the coefficient rows refer to.
    sharing : str
        ``"shared"`` (one coefficient row reused at every step) or
        ``"per-step"`` (row m used when stepping away from t_m).
    speed : float
        Propagation coefficient of the continuous-time system. Only the
        continuous reference path reads it; the discrete scheme absorbs any
        speed into the coefficient table. Default 1.
    """

    tau: float
    steps: int
    basis: PolynomialBasis
    sharing: str = "shared"
    speed: float = 1.0

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.sharing not in ("shared", "per-step"):
            raise ValueError(f"sharing must be 'shared' or 'per-step', got {self.sharing!r}")


@dataclass(frozen=True, eq=False)
class IntegratorState:
    """Two consecutive grid states: ``x_curr`` at t_step, ``x_prev`` one step back."""

    x_prev: np.ndarray
    x_curr: np.ndarray
    step: int


def coefficient_rows(cfg: IntegratorConfig) -> int:
    """Number of rows the coefficient table must have under ``cfg.sharing``."""
    return 1 if cfg.sharing == "shared" else cfg.steps


def _check_coeff_table(coeffs, cfg: IntegratorConfig) -> np.ndarray:
    table = as_float_array(coeffs, "coeffs")
    if table.ndim == 1:
        table = table[None, :]
    rows = coefficient_rows(cfg)
    if table.ndim != 2 or table.shape[0] != rows:
        raise ValueError(
            f"coefficient table must have shape ({rows}, order + 1) for "
            f"sharing={cfg.sharing!r} with {cfg.steps} steps, got {table.shape}"
        )
    return table


def _row(table: np.ndarray, cfg: IntegratorConfig, step_index: int) -> np.ndarray:
    return table[0] if cfg.sharing == "shared" else table[step_index]


def init_state(x0, xdot0, cfg: IntegratorConfig, coeffs, L: SparseSymMatrix) -> IntegratorState:
    """Seed the two-state window from initial value and velocity (row 0 of ``coeffs``)."""
    x0 = as_node_signal(x0, L.n, "x0")
    xdot0 = as_node_signal(xdot0, L.n, "xdot0")
    if x0.shape != xdot0.shape:
        raise ValueError(f"x0 and xdot0 shapes differ: {x0.shape} vs {xdot0.shape}")
    table = _check_coeff_table(coeffs, cfg)
    accel = apply_poly(cfg.basis, _row(table, cfg, 0), L, x0)
    x1 = cfg.tau * xdot0 + x0 + 0.5 * cfg.tau**2 * accel
    return IntegratorState(x_prev=x0, x_curr=x1, step=1)


def step(state: IntegratorState, cfg: IntegratorConfig, coeffs, L: SparseSymMatrix) -> IntegratorState:
    """Advance one grid interval; raises once the configured run is complete."""
    if state.step >= cfg.steps:
        raise RuntimeError(
            f"run complete: state is at step {state.step} of {cfg.steps}, cannot advance"
        )
    table = _check_coeff_table(coeffs, cfg)
    accel = apply_poly(cfg.basis, _row(table, cfg, state.step), L, state.x_curr)
    x_next = 2.0 * state.x_curr + cfg.tau**2 * accel - state.x_prev
    return IntegratorState(x_prev=state.x_curr, x_curr=x_next, step=state.step + 1)


def run(x0, xdot0, cfg: IntegratorConfig, coeffs, L: SparseSymMatrix) -> np.ndarray:
    """Integrate from t_0 to t_steps and return the final state values."""
    state = init_state(x0, xdot0, cfg, coeffs, L)
    while state.step < cfg.steps:
        state = step(state, cfg, coeffs, L)
    return state.x_curr


def continuous_reference(L_hat: SparseSymMatrix, speed: float, t: float, w0) -> np.ndarray:
    """Exact continuous-time evolution of the first-order block system.

    Evolves ``dw/dt = C w`` with ``C = blockdiag(I, speed^2 * L_hat)`` through
    the closed-form eigenexpansion: the top block scales by ``e^t`` and the
    bottom block evolves through the eigenbasis of ``L_hat``. This is the
    trusted slow route the leapfrog scheme is compared against.

    Parameters
    ----------
    L_hat : SparseSymMatrix
        Combinatorial Laplacian (any symmetric operator works).
    speed : float
        Propagation coefficient; the bottom block is ``speed^2 * L_hat``.
    t : float
        Evaluation time.
    w0 : array of shape (2 n,) or (2 n, d)
        Stacked initial condition, top block then bottom block.

    Returns
    -------
    ndarray
        ``w(t)`` with the same shape as ``w0``.
    """
    w0 = as_float_array(w0, "w0")
    if w0.shape[0] != 2 * L_hat.n:
        raise ValueError(f"w0 has {w0.shape[0]} rows, expected {2 * L_hat.n}")
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    ed = eigendecompose(L_hat)
    top, bottom = w0[: L_hat.n], w0[L_hat.n :]
    gains = np.exp(speed**2 * ed.eigenvalues * t)
    modes = ed.eigenvectors.T @ bottom
    scaled = gains[:, None] * modes if bottom.ndim == 2 else gains * modes
    return np.concatenate([np.exp(t) * top, ed.eigenvectors @ scaled], axis=0)
