"""Exact spectral machinery: eigendecomposition, ideal filters, matrix exponential.

This module is the ground-truth route everything else is checked against, so it
is deliberately self-contained: the eigensolver is a cyclic Jacobi rotation
sweep and the matrix exponential is scaling-and-squaring with a truncated
Taylor series, both written out here rather than delegated. Intended for
desk-scale problems (hundreds of nodes, dense O(n^2) memory); callers that
outgrow it should switch to sparse iterative methods.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import NumericalError
from .graphs import SparseSymMatrix
from .validation import as_node_signal, check_square, check_symmetric

__all__ = [
    "EigenDecomposition",
    "ScalarFilter",
    "FILTER_NAMES",
    "eigendecompose",
    "exact_filter",
    "reference_filter",
    "matrix_exponential",
]


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Full symmetric eigendecomposition, eigenvalues ascending.

    Attributes
    ----------
    eigenvalues : ndarray, shape (n,)
        Sorted ascending.
    eigenvectors : ndarray, shape (n, n)
        Orthonormal columns; column j pairs with ``eigenvalues[j]``. Each
        column's largest-magnitude component is positive, which pins the
        otherwise arbitrary sign.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eigendecompose(m, tol: float = 1e-10, max_sweeps: int = 100) -> EigenDecomposition:
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Accepts a dense array or a :class:`SparseSymMatrix`. Sweeps over all
    off-diagonal pairs, zeroing each with a Givens rotation, until the
    off-diagonal Frobenius norm drops below ``tol``.

    Raises
    ------
    ValueError
        If the input is not symmetric within 1e-10.
    NumericalError
        If ``max_sweeps`` sweeps do not reach ``tol``.
    """
    if isinstance(m, SparseSymMatrix):
        m = m.to_dense()
    a = check_symmetric(m, tol=1e-10, name="matrix")
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return EigenDecomposition(eigenvalues=a.diagonal().copy(), eigenvectors=v)

    def offdiag_sq(mat):
        # Sum squares of off-diagonal entries only. Never compute this as
        # ||A||_F^2 - ||diag||_F^2: the cancellation floor of that difference
        # (~eps * ||A||_F^2) is far above tol^2 once the matrix is large.
        stripped = mat.copy()
        np.fill_diagonal(stripped, 0.0)
        return float(np.sum(stripped * stripped))

    off2 = offdiag_sq(a)
    for sweep in range(max_sweeps):
        if off2 < tol * tol:
            break
        # Skip rotations on entries that cannot move the needle this sweep;
        # classic staged threshold keeps early sweeps from churning on noise.
        thresh = 0.2 * off2 / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq * apq <= thresh or apq == 0.0:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
        off2 = offdiag_sq(a)
    else:
        raise NumericalError(
            f"Jacobi sweeps did not converge: off-diagonal norm {math.sqrt(off2):.3e} "
            f"after {max_sweeps} sweeps (target {tol:g})"
        )

    order = np.argsort(a.diagonal(), kind="stable")
    eigenvalues = a.diagonal()[order].copy()
    eigenvectors = v[:, order]
    lead = np.argmax(np.abs(eigenvectors), axis=0)
    flip = eigenvectors[lead, np.arange(n)] < 0
    eigenvectors[:, flip] *= -1.0
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


@dataclass(frozen=True)
class ScalarFilter:
    """A named scalar gain function g(lambda), vectorized over numpy arrays."""

    name: str
    gain: Callable[[np.ndarray], np.ndarray]

    def __call__(self, lam):
        arr = np.asarray(lam, dtype=float)
        out = np.asarray(self.gain(arr), dtype=float)
        return float(out) if np.isscalar(lam) or arr.ndim == 0 else out


def _low_band_pass(lam: np.ndarray) -> np.ndarray:
    # Half-open branches as printed; the function jumps at lam = 1
    # (left limit e^-25, branch value e^-12.5).
    return np.where(
        lam < 0.5,
        1.0,
        np.where(lam < 1.0, np.exp(-100.0 * (lam - 0.5) ** 2), np.exp(-50.0 * (lam - 1.5) ** 2)),
    )


_FILTERS = {
    "low-pass": lambda lam: np.exp(-10.0 * lam**2),
    "high-pass": lambda lam: 1.0 - np.exp(-10.0 * lam**2),
    "band-pass": lambda lam: np.exp(-10.0 * (lam - 1.0) ** 2),
    "band-rejection": lambda lam: 1.0 - np.exp(-10.0 * (lam - 1.0) ** 2),
    "comb": lambda lam: np.abs(np.sin(np.pi * lam)),
    "low-band-pass": _low_band_pass,
    "runge": lambda lam: 1.0 / (1.0 + 25.0 * lam**2),
}

FILTER_NAMES = tuple(_FILTERS)


def reference_filter(name: str) -> ScalarFilter:
    """Look up one of the seven benchmark gain functions by name."""
    try:
        return ScalarFilter(name=name, gain=_FILTERS[name])
    except KeyError:
        raise ValueError(f"unknown filter {name!r}; choose from {', '.join(FILTER_NAMES)}") from None


def exact_filter(ed: EigenDecomposition, g: ScalarFilter, x) -> np.ndarray:
    """Apply the ideal spectral filter: U diag(g(lambda)) U^T x.

    ``x`` may be a vector (n,) or a matrix of feature columns (n, d).
    """
    n = ed.eigenvalues.shape[0]
    x = as_node_signal(x, n)
    gains = np.asarray(g(ed.eigenvalues), dtype=float)
    coeffs = ed.eigenvectors.T @ x
    if x.ndim == 1:
        return ed.eigenvectors @ (gains * coeffs)
    return ed.eigenvectors @ (gains[:, None] * coeffs)


def _expm_core(a: np.ndarray) -> np.ndarray:
    """exp(a) by scaling-and-squaring with a truncated Taylor series."""
    n = a.shape[0]
    norm1 = float(np.max(np.abs(a).sum(axis=0))) if n else 0.0
    squarings = max(0, math.ceil(math.log2(norm1 / 0.5))) if norm1 > 0.5 else 0
    b = a / (2.0**squarings)
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, 64):
        term = term @ b / k
        result = result + term
        if float(np.max(np.abs(term))) < 1e-16:
            break
    else:
        raise NumericalError("matrix exponential Taylor series did not truncate")
    for _ in range(squarings):
        result = result @ result
    return result


def matrix_exponential(m, t: float) -> np.ndarray:
    """Compute exp(m * t) for a square matrix.

    Scaling-and-squaring: m*t is halved until its 1-norm is at most 0.5, the
    exponential of the scaled matrix is summed as a Taylor series to machine
    precision, then repeatedly squared. A halving identity
    ``exp(m t/2)^2 == exp(m t)`` is evaluated as a self-check on every call.

    Raises
    ------
    NumericalError
        If the self-check residual (relative to the result magnitude)
        exceeds 1e-8.
    """
    a = check_square(m, "matrix")
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    full = _expm_core(a * t)
    half = _expm_core(a * (t / 2.0))
    scale = max(1.0, float(np.max(np.abs(full))))
    residual = float(np.max(np.abs(half @ half - full))) / scale
    if residual >= 1e-8:
        raise NumericalError(
            f"matrix exponential self-check failed: halving residual {residual:.3e}"
        )
    return full
