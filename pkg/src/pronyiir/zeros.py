"""Numerator design for a fixed denominator.

With ``a`` held fixed, the impulse response over the first ``K`` samples is
linear in ``b``: ``h = D1 b`` where ``D1`` holds the first ``M+1`` columns of
the inverse of the banded lower-triangular matrix ``A[i, j] = a[i - j]``.
Minimizing the solution error ``||h_d - h||`` is then an ordinary linear
least-squares problem.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvalidOrderError, RankDeficiencyWarning
from .linalg import as_vec, lstsq, solve_lower_triangular
from .time_design import RationalFilter, impulse_response

__all__ = [
    "ZeroDesignProblem",
    "ZeroDesignReport",
    "build_banded_A",
    "solution_error_basis",
    "solve_numerator_solution_error",
    "solution_error",
    "zero_equation_error",
    "design_zeros",
]


@dataclass(frozen=True)
class ZeroDesignProblem:
    """Fixed denominator `a`, desired samples `h_d` (length K), numerator degree `M`."""

    a: np.ndarray
    h_d: np.ndarray
    M: int

    def __post_init__(self):
        a = as_vec(self.a, "a")
        if a[0] != 1:
            raise InvalidInputError(f"a[0] must be 1, got {a[0]}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "h_d", as_vec(self.h_d, "h_d"))
        if int(self.M) != self.M or self.M < 0:
            raise InvalidOrderError(f"M must be a nonnegative integer, got {self.M}")
        object.__setattr__(self, "M", int(self.M))
        if self.K < self.M + 1:
            raise InvalidOrderError(f"need at least M+1 = {self.M + 1} samples, got {self.K}")

    @property
    def K(self):
        return self.h_d.size


@dataclass(frozen=True)
class ZeroDesignReport:
    solution_error: np.ndarray
    equation_error: np.ndarray
    rank: int

    @property
    def solution_error_norm(self):
        return float(np.linalg.norm(self.solution_error))

    @property
    def equation_error_norm(self):
        return float(np.linalg.norm(self.equation_error))


def build_banded_A(a, K):
    """``K x K`` lower-triangular Toeplitz matrix with first column ``a`` (truncated/padded)."""
    a = as_vec(a, "a")
    if a[0] != 1:
        raise InvalidInputError(f"a[0] must be 1, got {a[0]}")
    K = int(K)
    if K < 1:
        raise InvalidInputError(f"K must be at least 1, got {K}")
    A = np.zeros((K, K), dtype=np.complex128)
    for n in range(min(a.size, K)):
        idx = np.arange(K - n)
        A[idx + n, idx] = a[n]
    return A


def solution_error_basis(a, K, M):
    """``D1``: column ``j`` is ``A^-1 e_j``, i.e. the response to a delayed impulse."""
    A = build_banded_A(a, K)
    D1 = np.empty((K, M + 1), dtype=np.complex128)
    for j in range(M + 1):
        e = np.zeros(K, dtype=np.complex128)
        e[j] = 1.0
        D1[:, j] = solve_lower_triangular(A, e)
    return D1


def _solve(p):
    D1 = solution_error_basis(p.a, p.K, p.M)
    res = lstsq(D1, p.h_d)
    if res.rank < p.M + 1:
        warnings.warn(
            f"solution-error basis is rank deficient (rank {res.rank} of {p.M + 1}); "
            "using the minimum-norm numerator",
            RankDeficiencyWarning, stacklevel=3)
    return res.solution, res.rank


def solve_numerator_solution_error(p):
    """Numerator of degree ``M`` minimizing ``||h_d - h||_2`` over ``K`` samples."""
    return _solve(p)[0]


def solution_error(p, b):
    """``e = h_d - h`` with ``h`` the first ``K`` samples of the response of ``(b, a)``."""
    b = as_vec(b, "b")
    return p.h_d - impulse_response(RationalFilter(b, p.a), p.K)


def zero_equation_error(p, b):
    """``A h_d - (b, 0)``, the equation error for the same ``(b, a)``."""
    b = as_vec(b, "b")
    lhs = np.zeros(p.K, dtype=np.complex128)
    lhs[:min(b.size, p.K)] = b[:p.K]
    return build_banded_A(p.a, p.K) @ p.h_d - lhs


def design_zeros(p):
    """Solve for the numerator and report both error measures."""
    b, rank = _solve(p)
    report = ZeroDesignReport(
        solution_error=solution_error(p, b),
        equation_error=zero_equation_error(p, b),
        rank=rank,
    )
    return RationalFilter(b, p.a), report
