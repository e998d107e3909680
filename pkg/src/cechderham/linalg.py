"""Small linear-algebra kernel shared by the rest of the package.

Sparse storage, products and factorizations are delegated to scipy; this
module pins down the two contracts the higher levels rely on: a residual-checked
symmetric (possibly indefinite) direct solve, and an SVD-based null-space
extraction for small dense problems.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla


class SingularSystemError(RuntimeError):
    """Raised when a factorization breaks down or a solve cannot reach tolerance."""


class SizeLimitError(RuntimeError):
    """Raised when a dense computation would exceed the configured size budget."""


DENSE_BUDGET = 5000  # max dimension for dense SVD / eigendecompositions


def solve_symmetric(system, rhs, tol=1e-10):
    """Solve a square symmetric (possibly indefinite) sparse system directly.

    Args:
        system: square scipy sparse matrix or dense array; symmetric,
            nonsingular.  Saddle-point blocks with zero diagonal are fine.
        rhs: right-hand side vector, or matrix of stacked right-hand sides.
        tol: maximum admissible relative residual ||Ax-b|| / ||b||.

    Returns:
        Solution with the same shape as ``rhs``.

    Raises:
        SingularSystemError: if the factorization fails or the residual
            check does not meet ``tol``.
    """
    A = sp.csc_matrix(system, dtype=float)
    n, m = A.shape
    if n != m:
        raise ValueError(f"system must be square, got {n}x{m}")
    b = np.asarray(rhs, dtype=float)
    if b.shape[0] != n:
        raise ValueError(f"rhs length {b.shape[0]} does not match system size {n}")
    try:
        lu = spla.splu(A)
        x = lu.solve(b)
    except (RuntimeError, ValueError) as exc:
        raise SingularSystemError(f"sparse factorization failed: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystemError("solve produced non-finite entries (singular system?)")
    bnorm = np.linalg.norm(b)
    res = np.linalg.norm(A @ x - b)
    if res > tol * max(bnorm, 1e-300):
        raise SingularSystemError(
            f"relative residual {res / max(bnorm, 1e-300):.3e} exceeds tolerance {tol:.1e}"
        )
    return x


def factorized(system):
    """Return a reusable solve closure for a symmetric sparse matrix.

    The closure accepts vectors or stacked right-hand sides.  Factorization
    errors surface as SingularSystemError at call time of this function.
    """
    A = sp.csc_matrix(system, dtype=float)
    try:
        lu = spla.splu(A)
    except (RuntimeError, ValueError) as exc:
        raise SingularSystemError(f"sparse factorization failed: {exc}") from exc

    def solve(b):
        return lu.solve(np.asarray(b, dtype=float))

    return solve


def nullspace(matrix, rel_tol=1e-8):
    """Orthonormal basis of the (right) null space of a dense matrix.

    Singular vectors with singular value <= rel_tol * sigma_max are kept.
    Returns an (n, k) array whose columns are orthonormal; k may be zero.
    """
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    if not (0.0 < rel_tol < 1.0):
        raise ValueError("rel_tol must lie in (0, 1)")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    if A.shape[1] > DENSE_BUDGET:
        raise SizeLimitError(f"dense null space of width {A.shape[1]} exceeds budget {DENSE_BUDGET}")
    if min(A.shape) == 0 or not np.any(A):
        # zero (or empty) matrix: the whole domain is the kernel
        return np.eye(A.shape[1])
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    smax = s[0]
    ker = np.sum(s > rel_tol * smax)
    return vt[ker:].T.copy()
