"""Input validation helpers shared across the package.

Small, sklearn-utils-flavoured checks: every public entry point funnels its
array arguments through one of these so shape errors surface as ``ValueError``
with a usable message instead of a broadcasting surprise three calls deep.
"""

import numpy as np

__all__ = [
    "as_float_array",
    "as_node_signal",
    "as_sample_matrix",
    "check_square",
    "check_symmetric",
]


def as_float_array(x, name: str = "array") -> np.ndarray:
    """Convert to a float64 ndarray and reject non-finite entries."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_node_signal(x, n: int, name: str = "x") -> np.ndarray:
    """Validate a per-node signal: shape (n,) or (n, d) with d >= 1."""
    arr = as_float_array(x, name)
    if arr.ndim not in (1, 2):
        raise ValueError(f"{name} must be 1-D or 2-D, got ndim={arr.ndim}")
    if arr.shape[0] != n:
        raise ValueError(f"{name} has {arr.shape[0]} rows, expected {n} (one per node)")
    return arr


def as_sample_matrix(X, n: int, name: str = "X") -> np.ndarray:
    """Validate a batch of signals, one per row: (s, n); a single (n,) vector is promoted."""
    arr = as_float_array(X, name)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got ndim={arr.ndim}")
    if arr.shape[1] != n:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected {n} (one per node)")
    return arr


def check_square(m, name: str = "matrix") -> np.ndarray:
    arr = as_float_array(m, name)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    return arr


def check_symmetric(m, tol: float = 1e-10, name: str = "matrix") -> np.ndarray:
    """Validate symmetry within ``tol`` and return the symmetrized copy."""
    arr = check_square(m, name)
    if arr.size and np.max(np.abs(arr - arr.T)) > tol:
        raise ValueError(f"{name} is not symmetric within {tol:g}")
    return 0.5 * (arr + arr.T)
