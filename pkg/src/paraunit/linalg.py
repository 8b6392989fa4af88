"""Dense complex linear-algebra kernels.

Thin, contract-pinning wrappers around LAPACK (via ``numpy.linalg``): exact
tolerances, symmetrization on return, stability margins and size caps are
fixed here so the rest of the package can rely on them.  All functions are
pure and operate on 2-D complex ``numpy`` arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotHermitian,
    NotIsometric,
    NotSchurStable,
    SizeLimitExceeded,
)

#: Largest allowed deviation of V*V from the identity for isometry inputs.
ISOMETRY_TOL = 1e-10
#: Relative Hermitian-symmetry tolerance for eigensolver inputs.
HERMITIAN_RTOL = 1e-10
#: Stein solves and spectral radii require spectral radius < 1 - SCHUR_MARGIN.
SCHUR_MARGIN = 1e-9
#: Cap on the state dimension; keeps the vectorized Stein system <= 4096^2.
SIZE_LIMIT = 64


def as_complex_matrix(x, name: str = "matrix") -> np.ndarray:
    """Coerce ``x`` to a 2-D complex array, rejecting NaN/Inf entries."""
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def _require_square(a: np.ndarray, name: str) -> int:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    return a.shape[0]


def unitary_completion(v, tol: float = ISOMETRY_TOL) -> np.ndarray:
    """Append columns extending an isometry to a full unitary matrix.

    Parameters
    ----------
    v : (k, r) array_like
        Matrix with orthonormal columns, ``v* v = I_r``, ``r <= k``.
    tol : float
        Largest allowed Frobenius deviation of ``v* v`` from ``I_r``.

    Returns
    -------
    (k, k - r) ndarray
        ``w`` such that ``[v w]`` is unitary and ``w* v = 0``.  For ``r == k``
        this is an empty ``k x 0`` matrix.

    Notes
    -----
    Computed from a full Householder QR of ``v``: the completion is the
    trailing ``k - r`` columns of the square orthogonal factor.  Any unitary
    remix of those columns would be equally valid; QR fixes a deterministic
    choice.
    """
    v = as_complex_matrix(v, "v")
    k, r = v.shape
    if r > k:
        raise DimensionMismatch(f"cannot complete a {k}x{r} matrix with r > k")
    residual = float(np.linalg.norm(v.conj().T @ v - np.eye(r)))
    if residual > tol:
        raise NotIsometric(
            f"columns are not orthonormal: residual {residual:.3e} exceeds {tol:.1e}"
        )
    if r == 0:
        return np.eye(k, dtype=complex)
    if r == k:
        return np.zeros((k, 0), dtype=complex)
    q, _ = np.linalg.qr(v, mode="complete")
    return q[:, r:]


def solve_stein(a, q, side: str = "cont", hermitian_tol: float = 1e-12) -> np.ndarray:
    """Solve a discrete-time Stein equation with a Schur-stable matrix.

    Parameters
    ----------
    a : (n, n) array_like
        Schur-stable matrix (spectral radius strictly below one).
    q : (n, n) array_like
        Hermitian right-hand side.
    side : {"cont", "obs"}
        ``"cont"`` solves ``W - A W A* = Q`` (controllability convention),
        ``"obs"`` solves ``W - A* W A = Q`` (observability convention).

    Returns
    -------
    (n, n) ndarray
        The unique solution, symmetrized as ``(W + W*) / 2`` on return.

    Notes
    -----
    Solved by Kronecker vectorization, ``(I - conj(A) (x) A) vec(W) = vec(Q)``,
    with dense LU and partial pivoting; hence the ``n <= 64`` cap.
    """
    a = as_complex_matrix(a, "a")
    q = as_complex_matrix(q, "q")
    n = _require_square(a, "a")
    if q.shape != (n, n):
        raise DimensionMismatch(f"q must be {n}x{n}, got {q.shape}")
    if n > SIZE_LIMIT:
        raise SizeLimitExceeded(f"n = {n} exceeds the dense Stein cap of {SIZE_LIMIT}")
    if side not in ("cont", "obs"):
        raise ValueError(f"side must be 'cont' or 'obs', got {side!r}")
    herm_residual = float(np.linalg.norm(q - q.conj().T))
    if herm_residual > hermitian_tol * max(1.0, float(np.linalg.norm(q))):
        raise NotHermitian(f"q is not Hermitian: residual {herm_residual:.3e}")
    if n == 0:
        return q.copy()
    rho = spectral_radius(a)
    if rho >= 1.0 - SCHUR_MARGIN:
        raise NotSchurStable(f"spectral radius {rho:.12f} is not below 1 - {SCHUR_MARGIN:.0e}")
    if side == "obs":
        a = a.conj().T
    system = np.eye(n * n, dtype=complex) - np.kron(a.conj(), a)
    w = np.linalg.solve(system, q.reshape(-1, order="F")).reshape((n, n), order="F")
    return 0.5 * (w + w.conj().T)


def hermitian_eig(m, rtol: float = HERMITIAN_RTOL):
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    m : (n, n) array_like
        Matrix with ``||M - M*||_F <= rtol * ||M||_F``.

    Returns
    -------
    (eigenvalues, eigenvectors)
        Real eigenvalues in ascending order and a unitary matrix whose
        columns are the matching eigenvectors.
    """
    m = as_complex_matrix(m, "m")
    _require_square(m, "m")
    norm = float(np.linalg.norm(m))
    if float(np.linalg.norm(m - m.conj().T)) > rtol * norm:
        raise NotHermitian("matrix deviates from Hermitian symmetry beyond tolerance")
    values, vectors = np.linalg.eigh(0.5 * (m + m.conj().T))
    return values, vectors


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus of a square matrix (n between 1 and 64)."""
    a = as_complex_matrix(a, "a")
    n = _require_square(a, "a")
    if n < 1:
        raise DimensionMismatch("matrix must be at least 1x1")
    if n > SIZE_LIMIT:
        raise SizeLimitExceeded(f"n = {n} exceeds the dense eigenvalue cap of {SIZE_LIMIT}")
    try:
        eigenvalues = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failures are rare
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    return float(np.max(np.abs(eigenvalues)))
