"""Machine checks for the closed-form solution of the block first-order system.

The second-order node dynamics rewrite as ``dw/dt = C w`` with
``C = blockdiag(I_n, speed^2 * L_hat)``. Its solution space has an explicit
description: eigenvalue 1 with multiplicity n carried by top-block standard
basis vectors, eigenvalue ``speed^2 * lam_i`` for every Laplacian eigenvalue
``lam_i`` carried by bottom-block Laplacian eigenvectors, and a fundamental
matrix ``Phi(t)`` whose columns are ``e^{mu_i t} u_i``. :func:`verify_theorems`
confronts that description with independent numerics — a dense eigensolve of
the full 2n x 2n matrix, finite differences, and the matrix exponential — and
reports one residual per claim.

All residuals are *relative*: each is normalized by ``max(1, magnitude)`` of
the quantity under test, since ``exp(C t)`` entries grow like
``e^{speed^2 * lam_max * t}`` and absolute thresholds would be meaningless
there.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError
from .graphs import SparseSymMatrix
from .spectral import eigendecompose, matrix_exponential
from .validation import as_float_array

__all__ = [
    "BlockSystem",
    "FundamentalMatrix",
    "CheckResult",
    "VerificationReport",
    "build_block_system",
    "eigenstructure",
    "fundamental_matrix",
    "verify_theorems",
    "expand_in_basis",
]

CHECK_NAMES = (
    "eigenvalue_multiset",
    "eigenvector_block_structure",
    "fundamental_matrix_ode",
    "matrix_exponential_identity",
)


@dataclass(frozen=True, eq=False)
class BlockSystem:
    """First-order companion system ``dw/dt = C w``.

    Attributes
    ----------
    c : ndarray, shape (2 n, 2 n)
        Dense block matrix ``blockdiag(I, speed^2 * L_hat)``.
    n : int
        Node count (half the system dimension).
    speed : float
        Propagation coefficient.
    """

    c: np.ndarray
    n: int
    speed: float


@dataclass(frozen=True, eq=False)
class FundamentalMatrix:
    """Fundamental solution ``Phi(t)``, column i equal to ``e^{mu_i t} u_i``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    time: float
    matrix: np.ndarray


@dataclass(frozen=True)
class CheckResult:
    check_name: str
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    nodes: int
    speed: float
    time: float
    tolerance: float
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def build_block_system(L_hat: SparseSymMatrix, speed: float) -> BlockSystem:
    """Assemble ``C = blockdiag(I, speed^2 * L_hat)`` densely."""
    if not np.isfinite(speed):
        raise ValueError("speed must be finite")
    n = L_hat.n
    c = np.zeros((2 * n, 2 * n))
    c[:n, :n] = np.eye(n)
    c[n:, n:] = speed**2 * L_hat.to_dense()
    return BlockSystem(c=c, n=n, speed=speed)


def eigenstructure(bs: BlockSystem) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigenpairs of the block system.

    Returns
    -------
    (eigenvalues, eigenvectors)
        ``eigenvalues[i]`` pairs with column i of ``eigenvectors``. The first
        n pairs are (1, top-block standard basis vector); the last n are
        (``speed^2 * lam_i``, bottom-block Laplacian eigenvector), Laplacian
        eigenvalues ascending. Columns are orthonormal.
    """
    n = bs.n
    ed = eigendecompose(bs.c[n:, n:] / bs.speed**2 if bs.speed != 0 else bs.c[n:, n:])
    values = np.concatenate([np.ones(n), bs.speed**2 * ed.eigenvalues])
    vectors = np.zeros((2 * n, 2 * n))
    vectors[:n, :n] = np.eye(n)
    vectors[n:, n:] = ed.eigenvectors
    return values, vectors


def fundamental_matrix(values: np.ndarray, vectors: np.ndarray, t: float) -> FundamentalMatrix:
    """Scale eigenvector columns by ``e^{mu_i t}``."""
    values = as_float_array(values, "values")
    vectors = as_float_array(vectors, "vectors")
    if vectors.ndim != 2 or vectors.shape[1] != values.shape[0]:
        raise ValueError("vectors must have one column per eigenvalue")
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    return FundamentalMatrix(
        eigenvalues=values,
        eigenvectors=vectors,
        time=t,
        matrix=vectors * np.exp(values * t)[None, :],
    )


def _relative(residual: float, scale: float) -> float:
    return residual / max(1.0, scale)


def verify_theorems(L_hat: SparseSymMatrix, speed: float, t: float, tol: float = 1e-6) -> VerificationReport:
    """Run the four named solution-space checks and report residuals.

    Checks
    ------
    1. ``eigenvalue_multiset`` — the closed-form spectrum {1 (x n)} union
       {speed^2 * lam_i} matches an independent dense eigensolve of C.
    2. ``eigenvector_block_structure`` — every independently computed
       eigenvector lies in the span of the closed-form eigenvectors whose
       eigenvalues fall in the same cluster (a subspace condition, so repeated
       eigenvalues and collisions between the two blocks are handled), and the
       closed-form pairs satisfy the eigen-equation.
    3. ``fundamental_matrix_ode`` — central difference of Phi at t matches
       C Phi(t) (h = 1e-5).
    4. ``matrix_exponential_identity`` — exp(C t) equals Phi(t) Phi(0)^{-1}.

    Raises
    ------
    NumericalError
        If Phi(0) is numerically singular (the independence claim fails).
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    bs = build_block_system(L_hat, speed)
    values, vectors = eigenstructure(bs)
    full = eigendecompose(bs.c)
    scale = float(np.max(np.abs(values)))

    # 1: spectra as multisets.
    multiset_res = _relative(
        float(np.max(np.abs(np.sort(values) - full.eigenvalues))), scale
    )

    # 2: subspace membership per eigenvalue cluster + eigen-equation residual.
    radius = max(tol, 1e-8) * max(1.0, scale)
    block_res = 0.0
    for j in range(full.eigenvalues.size):
        mask = np.abs(values - full.eigenvalues[j]) <= radius
        if not mask.any():
            block_res = max(block_res, 1.0)  # computed eigenvalue with no claimed partner
            continue
        basis = vectors[:, mask]
        w = full.eigenvectors[:, j]
        block_res = max(block_res, float(np.max(np.abs(w - basis @ (basis.T @ w)))))
    eig_eq = bs.c @ vectors - vectors * values[None, :]
    block_res = max(block_res, _relative(float(np.max(np.abs(eig_eq))), float(np.max(np.abs(bs.c)))))

    # 3: d/dt Phi = C Phi by central differences.
    h = 1e-5
    phi = fundamental_matrix(values, vectors, t).matrix
    phi_plus = fundamental_matrix(values, vectors, t + h).matrix
    phi_minus = fundamental_matrix(values, vectors, t - h).matrix
    drift = bs.c @ phi
    ode_res = _relative(
        float(np.max(np.abs((phi_plus - phi_minus) / (2.0 * h) - drift))),
        float(np.max(np.abs(drift))),
    )

    # 4: exp(C t) = Phi(t) Phi(0)^{-1}.
    phi0 = fundamental_matrix(values, vectors, 0.0).matrix
    sign, logdet = np.linalg.slogdet(phi0)
    if sign == 0 or logdet < np.log(1e-12):
        raise NumericalError(
            "fundamental matrix at t=0 is numerically singular; "
            "the linear-independence claim fails on this input"
        )
    propagator = np.linalg.solve(phi0.T, phi.T).T
    expm = matrix_exponential(bs.c, t)
    exp_res = _relative(float(np.max(np.abs(expm - propagator))), float(np.max(np.abs(expm))))

    residuals = (multiset_res, block_res, ode_res, exp_res)
    return VerificationReport(
        nodes=bs.n,
        speed=speed,
        time=t,
        tolerance=tol,
        checks=tuple(
            CheckResult(check_name=name, residual=res, tolerance=tol, passed=bool(res < tol))
            for name, res in zip(CHECK_NAMES, residuals)
        ),
    )


def expand_in_basis(w, fm: FundamentalMatrix) -> np.ndarray:
    """Coordinates of ``w`` in the fundamental solution basis at ``fm.time``.

    Solves ``fm.matrix @ c = w`` and verifies the reconstruction to 1e-8
    (relative); ``w`` may carry multiple columns wave-by-wave.
    """
    w = as_float_array(w, "w")
    if w.shape[0] != fm.matrix.shape[0]:
        raise ValueError(f"w has {w.shape[0]} rows, expected {fm.matrix.shape[0]}")
    try:
        coords = np.linalg.solve(fm.matrix, w)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"fundamental matrix is singular at t={fm.time}") from exc
    residual = float(np.max(np.abs(fm.matrix @ coords - w))) / max(1.0, float(np.max(np.abs(w))))
    if residual >= 1e-8:
        raise NumericalError(
            f"expansion reconstruction residual {residual:.3e} exceeds 1e-8"
        )
    return coords
