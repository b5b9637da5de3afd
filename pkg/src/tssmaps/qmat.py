"""Small dense complex linear algebra for qubit maps.

Everything here operates on ``numpy`` arrays of shape ``(n, m)`` with
``n, m`` in ``{1, 2, 4}``. Vectorization is row-major throughout::

    vec(rho) = (rho_00, rho_01, rho_10, rho_11)

so that ``vec(X @ rho @ Y) == kron(X, Y.T) @ vec(rho)``.
"""

import numpy as np

from .errors import DomainError, ShapeError, SingularityError

ALLOWED_DIMS = (1, 2, 4)
HERMITIAN_TOL = 1e-10
DEFAULT_MAX_COND = 1e12


class HermitianEigenResult:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    __slots__ = ("eigenvalues", "eigenvectors")

    def __init__(self, eigenvalues, eigenvectors):
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def as_matrix(a):
    """Return ``a`` as a complex 2-D array, checking the supported shapes."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] not in ALLOWED_DIMS or m.shape[1] not in ALLOWED_DIMS:
        raise ShapeError(f"unsupported matrix shape {m.shape}")
    return m


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def matmul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def inverse(a, max_cond=DEFAULT_MAX_COND, min_singular=0.0):
    """Matrix inverse guarded by a condition-number bound.

    Raises:
        SingularityError: if the smallest singular value is at or below
            ``min_singular`` or the condition number exceeds ``max_cond``.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"inverse needs a square matrix, got {a.shape}")
    sv = np.linalg.svd(a, compute_uv=False)
    smin, smax = sv[-1], sv[0]
    if smin <= min_singular or smin == 0.0 or smax / smin > max_cond:
        raise SingularityError(
            f"matrix is singular or ill-conditioned (smallest singular value {smin:.3e})",
            smallest_singular_value=float(smin),
        )
    return np.linalg.inv(a)


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol * scale)


def _symmetrized(m, tol):
    m = np.asarray(m, dtype=complex)
    if m.shape[-1] != m.shape[-2]:
        raise ShapeError(f"expected square matrices, got {m.shape}")
    if not is_hermitian(m, tol):
        raise DomainError("matrix is not Hermitian within tolerance")
    return 0.5 * (m + dagger(m))


def hermitian_eig(m, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    The input is symmetrized as ``(M + M^dagger) / 2`` after the Hermiticity check.
    """
    h = _symmetrized(as_matrix(m), tol)
    w, v = np.linalg.eigh(h)
    order = np.argsort(w)[::-1]
    return HermitianEigenResult(w[order], v[:, order])


def eigvalsh(m, tol=HERMITIAN_TOL):
    """Descending eigenvalues; accepts a stack of matrices ``(..., n, n)``."""
    h = _symmetrized(m, tol)
    return np.linalg.eigvalsh(h)[..., ::-1]


def trace_norm(m, tol=HERMITIAN_TOL):
    """Sum of absolute eigenvalues of a Hermitian matrix (or stack of them)."""
    return np.sum(np.abs(eigvalsh(m, tol)), axis=-1)


def vectorize(rho):
    rho = as_matrix(rho)
    return rho.reshape(-1).copy()


def unvectorize(vec):
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    d = int(round(np.sqrt(vec.size)))
    if d * d != vec.size or d not in ALLOWED_DIMS:
        raise ShapeError(f"vector of length {vec.size} is not a vectorized square matrix")
    return vec.reshape(d, d).copy()


def reshuffle(a):
    """Index involution ``B[j'j; k'k] = A[j'k'; jk]`` on a 4x4 qubit superoperator.

    Maps the row-major superoperator of a channel to its Choi matrix
    ``sum_jk E(|j><k|) (x) |j><k|`` and back.
    """
    a = as_matrix(a)
    if a.shape != (4, 4):
        raise ShapeError(f"reshuffle needs a 4x4 matrix, got {a.shape}")
    return a.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
