"""Dense numerical kernels shared by the design modules.

Everything works on complex128 arrays; real data simply carries a zero
imaginary part.  Least squares goes through a column-pivoted QR
factorization (never through the normal equations), triangular systems
are solved by substitution, and polynomial roots come from the
eigenvalues of a companion matrix.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidInputError, SingularMatrixError

__all__ = [
    "LstsqResult",
    "as_vec",
    "as_mat",
    "lstsq",
    "solve_lower_triangular",
    "dft",
    "idft",
    "poly_roots",
    "poly_eval",
    "RANK_RTOL",
]

#: Relative tolerance on the diagonal of R used to decide numerical rank.
RANK_RTOL = 1e-12


def as_vec(x, name="vector"):
    """Return `x` as a 1-D complex128 array with at least one entry."""
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {v.shape}")
    if v.size == 0:
        raise InvalidInputError(f"{name} must not be empty")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return v


def as_mat(A, name="matrix"):
    """Return `A` as a 2-D complex128 array with at least one row and column."""
    m = np.asarray(A, dtype=np.complex128)
    if m.ndim != 2:
        raise InvalidInputError(f"{name} must be two-dimensional, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise InvalidInputError(f"{name} must have at least one row and column, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return m


@dataclass(frozen=True)
class LstsqResult:
    """Minimum-norm least-squares solution plus diagnostics.

    Attributes
    ----------
    solution : ndarray
        The minimizer of ``||A x - y||`` with smallest ``||x||``.
    residual_norm : float
        ``||A x - y||_2`` at the solution.
    rank : int
        Numerical rank from the pivoted QR diagonal.
    condition_estimate : float
        Ratio of extreme singular values of `A` (``inf`` when singular).
    """

    solution: np.ndarray
    residual_norm: float
    rank: int
    condition_estimate: float


def _condition(R):
    s = np.linalg.svd(R, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return np.inf
    if s[-1] == 0.0:
        return np.inf
    return float(s[0] / s[-1])


def lstsq(A, y, rank_atol=0.0):
    """Solve ``min ||A x - y||_2`` by QR with column pivoting.

    When `A` is numerically rank deficient the minimum-norm minimizer is
    returned, obtained from a complete orthogonal decomposition: the
    leading `rank` rows of R are themselves factored by a second QR so the
    null-space component can be dropped.

    Parameters
    ----------
    A : array_like, shape (m, n)
    y : array_like, shape (m,)
    rank_atol : float, optional
        Absolute floor for the rank decision, for callers whose matrix is a
        block of a larger system with a known scale.  A diagonal entry of R
        counts toward the rank only if it exceeds both
        ``RANK_RTOL * |R[0, 0]|`` and `rank_atol`.

    Returns
    -------
    LstsqResult
    """
    A = as_mat(A, "A")
    y = as_vec(y, "y")
    m, n = A.shape
    if y.shape[0] != m:
        raise InvalidInputError(f"dimension mismatch: A is {m}x{n} but y has length {y.shape[0]}")

    if not (np.any(A.imag) or np.any(y.imag)):
        # real data stays real so real designs come out exactly real
        A, y = A.real, y.real
    Q, R, perm = scipy.linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(diag > max(RANK_RTOL * diag[0], rank_atol)))

    z = np.zeros(n, dtype=A.dtype)
    if rank > 0:
        qty = Q[:, :rank].conj().T @ y
        if rank == n:
            z = scipy.linalg.solve_triangular(R[:n, :n], qty, lower=False)
        else:
            # R[:rank, :] = T^H Z^H with Z orthonormal columns spanning its row space
            Z, T = scipy.linalg.qr(R[:rank, :].conj().T, mode="economic")
            w = scipy.linalg.solve_triangular(T.conj().T, qty, lower=True)
            z = Z @ w
    x = np.empty(n, dtype=np.complex128)
    x[perm] = z

    resid = float(np.linalg.norm(A @ x - y))
    return LstsqResult(solution=x, residual_norm=resid, rank=rank,
                       condition_estimate=_condition(R))


def solve_lower_triangular(A, y):
    """Forward substitution for ``A x = y`` with `A` lower triangular.

    Only the lower triangle of `A` is read.  A zero on the diagonal raises
    :class:`SingularMatrixError`.
    """
    A = as_mat(A, "A")
    y = as_vec(y, "y")
    n = A.shape[0]
    if A.shape != (n, n):
        raise InvalidInputError(f"A must be square, got {A.shape}")
    if y.shape[0] != n:
        raise InvalidInputError(f"dimension mismatch: A is {n}x{n} but y has length {y.shape[0]}")
    zero = np.flatnonzero(np.diag(A) == 0)
    if zero.size:
        raise SingularMatrixError(f"zero diagonal entry at index {zero[0]}")
    return scipy.linalg.solve_triangular(A, y, lower=True, check_finite=False)


def dft(x):
    """Forward DFT with kernel ``exp(-2j*pi*n*k/len(x))`` and no scaling."""
    return np.fft.fft(as_vec(x, "x"))


def idft(X):
    """Inverse of :func:`dft` (kernel ``exp(+2j*pi*n*k/n)``, scaled by 1/n)."""
    return np.fft.ifft(as_vec(X, "X"))


def poly_eval(coeffs, z):
    """Evaluate a polynomial (highest degree first) at `z` by Horner's rule."""
    c = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros_like(z)
    for ck in c:
        out = out * z + ck
    return out


def poly_roots(coeffs):
    """All roots of a polynomial given highest-degree coefficient first.

    Leading coefficients smaller than ``1e-14 * max|c|`` are stripped.
    Roots are the eigenvalues of the (balanced) companion matrix, each
    followed by Newton polishing steps that are kept only when they lower
    ``|p(r)|``.  A constant polynomial has no roots and yields an empty
    array.
    """
    c = as_vec(coeffs, "coeffs")
    scale = np.max(np.abs(c))
    if scale == 0.0:
        raise InvalidInputError("all polynomial coefficients are zero")
    lead = np.flatnonzero(np.abs(c) > 1e-14 * scale)[0]
    c = c[lead:]
    deg = c.size - 1
    if deg == 0:
        return np.zeros(0, dtype=np.complex128)

    monic = c / c[0]
    # real companion keeps conjugate pairs exact
    dtype = np.float64 if not np.any(monic.imag) else np.complex128
    monic = monic.real if dtype is np.float64 else monic
    companion = np.zeros((deg, deg), dtype=dtype)
    companion[0, :] = -monic[1:]
    if deg > 1:
        companion[np.arange(1, deg), np.arange(deg - 1)] = 1.0
    roots = np.linalg.eigvals(companion).astype(np.complex128)

    dc = c[:-1] * np.arange(deg, 0, -1)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for _ in range(3):
            p = poly_eval(c, roots)
            dp = poly_eval(dc, roots)
            ok = dp != 0
            step = np.zeros_like(roots)
            step[ok] = p[ok] / dp[ok]
            trial = roots - step
            better = np.abs(poly_eval(c, trial)) < np.abs(p)
            roots = np.where(better, trial, roots)
    return roots
