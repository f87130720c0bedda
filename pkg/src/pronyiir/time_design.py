"""Time-domain Prony / Pade design of IIR filters.

The desired impulse response ``h_d[0..L]`` is arranged in a lower-triangular
Toeplitz matrix whose first ``N+1`` columns multiply ``a = (1, a*)`` to give
``(b, 0)``.  The bottom ``L-M`` rows involve only the denominator, so ``a*``
is found first (exactly when ``L = M+N``, in the least-squares sense when
``L > M+N``) and ``b`` follows from the top ``M+1`` rows.
"""

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidInputError,
    InvalidOrderError,
    NoSolutionError,
    RankDeficiencyWarning,
)
from .linalg import RANK_RTOL, as_vec, lstsq, poly_roots

__all__ = [
    "Mode",
    "RationalFilter",
    "TimeDesignProblem",
    "Partition",
    "DesignReport",
    "build_partition",
    "partition_from_matrix",
    "solve_denominator",
    "solve_numerator",
    "equation_error",
    "design_time",
    "impulse_response",
    "pole_diagnostics",
]


class Mode(enum.Enum):
    """Exact interpolation or least-squared equation error."""

    INTERPOLATE = "interp"
    LEAST_SQUARES = "ls"

    @classmethod
    def coerce(cls, mode):
        if isinstance(mode, cls):
            return mode
        try:
            return cls(str(mode).lower())
        except ValueError:
            raise InvalidInputError(f"unknown mode {mode!r}; use 'interp' or 'ls'") from None


@dataclass(frozen=True)
class RationalFilter:
    """``H(z) = B(z) / A(z)`` with coefficients in ascending powers of ``z^-1``.

    ``a[0]`` is always exactly one.
    """

    b: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        b = as_vec(self.b, "b")
        a = as_vec(self.a, "a")
        if a[0] != 1:
            raise InvalidInputError(f"a[0] must be 1, got {a[0]}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @property
    def M(self):
        return self.b.size - 1

    @property
    def N(self):
        return self.a.size - 1

    @classmethod
    def normalized(cls, b, a):
        """Build a filter from any ``(b, a)`` by dividing through by ``a[0]``."""
        a = as_vec(a, "a")
        if a[0] == 0:
            raise InvalidInputError("a[0] must be nonzero")
        b = as_vec(b, "b") / a[0]
        a = a / a[0]
        a[0] = 1.0
        return cls(b, a)


@dataclass(frozen=True)
class TimeDesignProblem:
    """Desired impulse samples ``h_d`` (length ``L+1``) and orders ``M``, ``N``."""

    h_d: np.ndarray
    M: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "h_d", as_vec(self.h_d, "h_d"))
        if int(self.M) != self.M or int(self.N) != self.N or self.M < 0 or self.N < 0:
            raise InvalidOrderError(f"orders must be nonnegative integers, got M={self.M}, N={self.N}")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "N", int(self.N))
        if self.L < self.M + self.N:
            raise InvalidOrderError(
                f"{self.L + 1} samples cannot determine M={self.M}, N={self.N}: "
                f"need at least M+N+1 = {self.M + self.N + 1}")

    @property
    def L(self):
        return self.h_d.size - 1


@dataclass(frozen=True)
class Partition:
    """Blocks of the reduced convolution matrix ``H0`` (``(L+1) x (N+1)``).

    ``H1`` is the top ``M+1`` rows, ``h1`` the first column of the remaining
    rows and ``H2`` their other ``N`` columns.
    """

    H1: np.ndarray
    h1: np.ndarray
    H2: np.ndarray

    @property
    def M(self):
        return self.H1.shape[0] - 1

    @property
    def N(self):
        return self.H2.shape[1]

    @property
    def L(self):
        return self.M + self.h1.size

    @property
    def H0(self):
        lower = np.hstack([self.h1[:, None], self.H2])
        return np.vstack([self.H1, lower])


@dataclass(frozen=True)
class DesignReport:
    """Diagnostics of a time-domain design.

    Attributes
    ----------
    equation_error : ndarray, length L+1
        ``(b, 0) - H0 a``; its first ``M+1`` entries vanish by construction.
    poles : ndarray
        Roots of ``A(z)`` (as a polynomial in ``z``).
    pole_moduli : ndarray
    stable : bool
        True iff every pole lies strictly inside the unit circle.
    condition_estimate : float
        Condition estimate of the denominator system ``H2``.
    rank : int
        Numerical rank of ``H2``.
    mode : Mode
    """

    equation_error: np.ndarray
    poles: np.ndarray
    pole_moduli: np.ndarray
    stable: bool
    condition_estimate: float
    rank: int
    mode: Mode

    @property
    def equation_error_norm(self):
        return float(np.linalg.norm(self.equation_error))


def partition_from_matrix(H0, M):
    """Cut an ``(L+1) x (N+1)`` matrix into ``H1``, ``h1``, ``H2``."""
    return Partition(H1=H0[:M + 1, :].copy(), h1=H0[M + 1:, 0].copy(), H2=H0[M + 1:, 1:].copy())


def build_partition(p):
    """Toeplitz partition ``H[i, j] = h_d[i - j]`` (zero above the diagonal)."""
    h = p.h_d
    L, N = p.L, p.N
    H0 = np.zeros((L + 1, N + 1), dtype=np.complex128)
    for j in range(N + 1):
        H0[j:, j] = h[:L + 1 - j]
    return partition_from_matrix(H0, p.M)


def _check_mode_shape(part, mode):
    rows, N = part.H2.shape
    if mode is Mode.INTERPOLATE and rows != N:
        raise InvalidOrderError(
            f"interpolation needs L = M + N (square H2), got {rows} equations for {N} unknowns")
    if mode is Mode.LEAST_SQUARES and rows <= N:
        raise InvalidOrderError(
            f"least squares needs L - M > N, got {rows} equations for {N} unknowns")


def _solve_denominator(part, mode):
    """Return ``(a, rank, condition_estimate)``."""
    mode = Mode.coerce(mode)
    _check_mode_shape(part, mode)
    N = part.N
    if N == 0:
        return np.ones(1, dtype=np.complex128), 0, 1.0

    # rank is judged against the whole convolution matrix, so a block that is
    # pure rounding noise (e.g. an aliased sequence that should be zero) is
    # not mistaken for a well-scaled one
    scale = np.linalg.norm(part.H0, 2)
    res = lstsq(part.H2, -part.h1, rank_atol=RANK_RTOL * scale)
    if res.rank < N:
        scale = np.linalg.norm(part.h1) + np.linalg.norm(part.H2, 2) * np.linalg.norm(res.solution)
        if mode is Mode.INTERPOLATE and res.residual_norm > 1e-9 * max(scale, np.finfo(float).tiny):
            raise NoSolutionError(
                f"H2 is singular (rank {res.rank} of {N}, condition {res.condition_estimate:.3g}) "
                "and the interpolation equations are inconsistent; use least squares "
                "and/or increase the assumed order",
                rank=res.rank, condition_estimate=res.condition_estimate)
        warnings.warn(
            f"denominator system is rank deficient (rank {res.rank} of {N}); "
            "returning the minimum-norm solution, a lower order may suffice",
            RankDeficiencyWarning, stacklevel=3)
    a = np.concatenate([[1.0 + 0j], res.solution])
    return a, res.rank, res.condition_estimate


def solve_denominator(part, mode):
    """Denominator ``a = (1, a*)`` from ``h1 = -H2 a*``.

    In interpolation mode ``H2`` must be square; in least-squares mode it
    must be tall and ``||h1 + H2 a*||`` is minimized.  A rank-deficient
    ``H2`` gives the minimum-norm ``a*`` with a :class:`RankDeficiencyWarning`,
    except in interpolation mode when the equations are inconsistent, which
    raises :class:`NoSolutionError`.
    """
    return _solve_denominator(part, mode)[0]


def solve_numerator(part, a):
    """Numerator ``b = H1 a``."""
    a = as_vec(a, "a")
    if a.size != part.H1.shape[1]:
        raise InvalidInputError(f"a has length {a.size}, expected {part.H1.shape[1]}")
    return part.H1 @ a


def equation_error(part, b, a):
    """``(b, 0) - H0 a``, the residual of the convolution equations."""
    lhs = np.zeros(part.L + 1, dtype=np.complex128)
    lhs[:b.size] = b
    return lhs - part.H0 @ a


def pole_diagnostics(a):
    """Poles, their moduli and the stability flag for denominator `a`."""
    poles = poly_roots(a)
    moduli = np.abs(poles)
    return poles, moduli, bool(np.all(moduli < 1.0))


def design_time(p, mode="interp"):
    """Design ``(b, a)`` from desired impulse-response samples.

    Parameters
    ----------
    p : TimeDesignProblem
    mode : Mode or {'interp', 'ls'}
        ``'interp'`` needs exactly ``M+N+1`` samples and makes the designed
        impulse response pass through all of them; ``'ls'`` uses more
        samples and minimizes the squared equation error.

    Returns
    -------
    filt : RationalFilter
    report : DesignReport
        Stability is reported, never enforced.
    """
    mode = Mode.coerce(mode)
    part = build_partition(p)
    a, rank, cond = _solve_denominator(part, mode)
    b = solve_numerator(part, a)
    poles, moduli, stable = pole_diagnostics(a)
    report = DesignReport(
        equation_error=equation_error(part, b, a),
        poles=poles,
        pole_moduli=moduli,
        stable=stable,
        condition_estimate=cond,
        rank=rank,
        mode=mode,
    )
    return RationalFilter(b, a), report


def impulse_response(f, count):
    """First `count` samples of the causal impulse response of `f`.

    Runs ``h[i] = b[i] - sum_{n=1..N} a[n] h[i-n]`` with ``b[i] = 0`` for
    ``i > M``.
    """
    count = int(count)
    if count < 1:
        raise InvalidInputError(f"count must be at least 1, got {count}")
    b, a = f.b, f.a
    h = np.zeros(count, dtype=np.complex128)
    for i in range(count):
        acc = b[i] if i < b.size else 0.0
        for n in range(1, min(a.size - 1, i) + 1):
            acc -= a[n] * h[i - n]
        h[i] = acc
    return h
