"""Polynomial filter bases evaluated on scalars and on sparse operators.

A filter is ``g(lambda) = sum_k c_k p_k(shift(lambda))`` where ``p_k`` is one
of five polynomial families and ``shift`` is an affine re-map of the operator
spectrum. Applying the same polynomial to a Laplacian,
``sum_k c_k p_k(shift(L)) @ X``, uses matrix-vector products only, so the two
routes agree exactly (up to roundoff) for any coefficients — that identity is
what the test suite leans on.

Shift modes (string-keyed, ``L`` standing for the operator argument):

=========  =======================  =========================================
key        scalar map               typical use
=========  =======================  =========================================
``"L"``    lambda                   raw operator
``"L-I"``  lambda - 1               Chebyshev families on a [0, 2] spectrum
``"I-L"``  1 - lambda               monomial / Jacobi families
``"L/2"``  lambda / 2               Bernstein on a [0, 2] spectrum
=========  =======================  =========================================

For the ``chebyshev-interp`` family the coefficient vector parameterizes the
filter's *values at Chebyshev nodes* of the shifted interval; the expansion
coefficients are recovered by :func:`cheb_interp_coeffs` internally.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import SparseSymMatrix
from .spectral import ScalarFilter
from .validation import as_float_array, as_node_signal

__all__ = [
    "FAMILIES",
    "SHIFTS",
    "DEFAULT_SHIFTS",
    "PolynomialBasis",
    "eval_scalar",
    "apply_poly",
    "cheb_interp_coeffs",
    "cheb_interp_matrix",
    "to_scalar_filter",
]

FAMILIES = ("monomial", "chebyshev", "bernstein", "jacobi", "chebyshev-interp")
SHIFTS = ("L", "L-I", "I-L", "L/2")

# Per-family spectral re-map used when none is given explicitly.
DEFAULT_SHIFTS = {
    "monomial": "I-L",
    "chebyshev": "L-I",
    "bernstein": "L/2",
    "jacobi": "I-L",
    "chebyshev-interp": "L-I",
}


@dataclass(frozen=True)
class PolynomialBasis:
    """A polynomial family plus the spectral shift it is evaluated under.

    Parameters
    ----------
    family : str
        One of :data:`FAMILIES`.
    shift : str or None
        One of :data:`SHIFTS`; ``None`` selects the family default.
    jacobi_a, jacobi_b : float
        Jacobi family parameters, each > -1. ``(0, 0)`` is the Legendre
        family. Ignored by the other families.
    """

    family: str
    shift: str | None = None
    jacobi_a: float = 0.0
    jacobi_b: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.shift is None:
            object.__setattr__(self, "shift", DEFAULT_SHIFTS[self.family])
        elif self.shift not in SHIFTS:
            raise ValueError(f"unknown shift {self.shift!r}; choose from {SHIFTS}")
        if self.family == "jacobi" and (self.jacobi_a <= -1 or self.jacobi_b <= -1):
            raise ValueError(
                f"jacobi parameters must exceed -1, got ({self.jacobi_a}, {self.jacobi_b})"
            )


def _shift_scalar(shift: str, lam: np.ndarray) -> np.ndarray:
    if shift == "L":
        return lam
    if shift == "L-I":
        return lam - 1.0
    if shift == "I-L":
        return 1.0 - lam
    return lam / 2.0


def _jacobi_step_coeffs(k: int, a: float, b: float) -> tuple[float, float, float]:
    """Three-term recurrence multipliers for the Jacobi family at order k >= 2."""
    s = a + b
    lead = (2 * k + s) * (2 * k + s - 1) / (2 * k * (k + s))
    mid = (2 * k + s - 1) * (a * a - b * b) / (2 * k * (k + s) * (2 * k + s - 2))
    drop = (k + a - 1) * (k + b - 1) * (2 * k + s) / (k * (k + s) * (2 * k + s - 2))
    return lead, mid, drop


def _scalar_basis_values(basis: PolynomialBasis, order: int, lam: np.ndarray) -> np.ndarray:
    """Stack p_k(shift(lam)) for k = 0..order; shape (order + 1,) + lam.shape."""
    x = _shift_scalar(basis.shift, lam)
    out = np.empty((order + 1,) + x.shape)
    if basis.family == "bernstein":
        for k in range(order + 1):
            out[k] = math.comb(order, k) * (1.0 - x) ** (order - k) * x**k
        return out
    out[0] = 1.0
    if order == 0:
        return out
    if basis.family == "monomial":
        for k in range(1, order + 1):
            out[k] = x * out[k - 1]
    elif basis.family == "jacobi":
        a, b = basis.jacobi_a, basis.jacobi_b
        out[1] = (a - b) / 2.0 + (a + b + 2.0) / 2.0 * x
        for k in range(2, order + 1):
            lead, mid, drop = _jacobi_step_coeffs(k, a, b)
            out[k] = (lead * x + mid) * out[k - 1] - drop * out[k - 2]
    else:  # chebyshev and chebyshev-interp share the first-kind recurrence
        out[1] = x
        for k in range(2, order + 1):
            out[k] = 2.0 * x * out[k - 1] - out[k - 2]
    return out


def _shift_apply(shift: str, L: SparseSymMatrix, x: np.ndarray) -> np.ndarray:
    """shift(L) @ x via one sparse matvec."""
    if shift == "L":
        return L.dot(x)
    if shift == "L-I":
        return L.dot(x) - x
    if shift == "I-L":
        return x - L.dot(x)
    return L.dot(x) / 2.0


def operator_stack(basis: PolynomialBasis, order: int, L: SparseSymMatrix, x: np.ndarray) -> np.ndarray:
    """Stack p_k(shift(L)) @ x for k = 0..order; shape (order + 1,) + x.shape.

    Chebyshev/Jacobi/monomial families use their three-term recurrences
    (O(order) matvecs); Bernstein uses the binomial form directly
    (O(order^2) matvecs), which is fine at the orders this package targets.
    """
    return _stack_core(basis, order, L, as_node_signal(x, L.n))


def _stack_core(basis: PolynomialBasis, order: int, L: SparseSymMatrix, x: np.ndarray) -> np.ndarray:
    # No input validation: the optimizer feeds intermediate states through
    # here, and those must be allowed to overflow so divergence surfaces as
    # a non-finite loss instead of an input error.
    out = np.empty((order + 1,) + x.shape)
    if basis.family == "bernstein":
        # (I - S)^j x for j = 0..order, then re-apply S k times per term.
        complements = [x]
        for _ in range(order):
            prev = complements[-1]
            complements.append(prev - _shift_apply(basis.shift, L, prev))
        for k in range(order + 1):
            term = complements[order - k]
            for _ in range(k):
                term = _shift_apply(basis.shift, L, term)
            out[k] = math.comb(order, k) * term
        return out
    out[0] = x
    if order == 0:
        return out
    sx = _shift_apply(basis.shift, L, x)
    if basis.family == "monomial":
        out[1] = sx
        for k in range(2, order + 1):
            out[k] = _shift_apply(basis.shift, L, out[k - 1])
    elif basis.family == "jacobi":
        a, b = basis.jacobi_a, basis.jacobi_b
        out[1] = (a - b) / 2.0 * x + (a + b + 2.0) / 2.0 * sx
        for k in range(2, order + 1):
            lead, mid, drop = _jacobi_step_coeffs(k, a, b)
            out[k] = lead * _shift_apply(basis.shift, L, out[k - 1]) + mid * out[k - 1] - drop * out[k - 2]
    else:
        out[1] = sx
        for k in range(2, order + 1):
            out[k] = 2.0 * _shift_apply(basis.shift, L, out[k - 1]) - out[k - 2]
    return out


def cheb_interp_matrix(order: int) -> np.ndarray:
    """Map from values at the order+1 Chebyshev nodes to expansion coefficients.

    Row k holds ``w_k/(order+1) * T_k(x_j)`` over nodes
    ``x_j = cos((j + 1/2) pi / (order + 1))`` with half weight ``w_0 = 1`` and
    ``w_k = 2`` otherwise, so that ``coeffs = A @ values`` reproduces the
    values exactly at the nodes.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    count = order + 1
    nodes = np.cos((np.arange(count) + 0.5) * np.pi / count)
    cheb = np.empty((count, count))
    cheb[0] = 1.0
    if order >= 1:
        cheb[1] = nodes
    for k in range(2, count):
        cheb[k] = 2.0 * nodes * cheb[k - 1] - cheb[k - 2]
    weights = np.full(count, 2.0 / count)
    weights[0] = 1.0 / count
    return weights[:, None] * cheb


def cheb_interp_coeffs(values) -> np.ndarray:
    """Chebyshev expansion coefficients of the polynomial interpolating ``values``.

    ``values[j]`` is the filter value at the j-th Chebyshev node; the result
    ``c`` satisfies ``sum_k c_k T_k(x_j) == values[j]`` at every node.
    """
    vals = as_float_array(values, "values")
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("values must be a non-empty 1-D array")
    return cheb_interp_matrix(vals.size - 1) @ vals


def effective_coefficients(basis: PolynomialBasis, coeffs: np.ndarray) -> np.ndarray:
    """Coefficients actually multiplying p_k: identity except for the interp family."""
    if basis.family == "chebyshev-interp":
        return cheb_interp_coeffs(coeffs)
    return coeffs


def coefficient_adjoint(basis: PolynomialBasis, grad: np.ndarray) -> np.ndarray:
    """Pull a gradient w.r.t. effective coefficients back to the raw ones."""
    if basis.family == "chebyshev-interp":
        return cheb_interp_matrix(grad.shape[-1] - 1).T @ grad
    return grad


def _check_coeffs(coeffs) -> np.ndarray:
    arr = as_float_array(coeffs, "coeffs")
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coeffs must be a non-empty 1-D array, orders 0..K")
    return arr


def eval_scalar(basis: PolynomialBasis, coeffs, lam):
    """Evaluate the filter ``g(lambda)`` on scalars or arrays of eigenvalues."""
    c = effective_coefficients(basis, _check_coeffs(coeffs))
    arr = np.asarray(lam, dtype=float)
    values = _scalar_basis_values(basis, c.size - 1, np.atleast_1d(arr))
    out = np.tensordot(c, values, axes=(0, 0))
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def apply_poly(basis: PolynomialBasis, coeffs, L: SparseSymMatrix, x) -> np.ndarray:
    """Apply the polynomial filter to a signal: ``sum_k c_k p_k(shift(L)) @ x``.

    Cost is O(order * nnz * d) matvec work (order^2 for Bernstein); the result
    matches filtering through the full eigendecomposition to roundoff.
    """
    c = effective_coefficients(basis, _check_coeffs(coeffs))
    stack = operator_stack(basis, c.size - 1, L, x)
    return np.tensordot(c, stack, axes=(0, 0))


def to_scalar_filter(basis: PolynomialBasis, coeffs) -> ScalarFilter:
    """Wrap a polynomial filter as a named :class:`ScalarFilter` gain."""
    c = _check_coeffs(coeffs).copy()
    return ScalarFilter(
        name=f"{basis.family}[{c.size - 1}]",
        gain=lambda lam: eval_scalar(basis, c, np.asarray(lam, dtype=float)),
    )
