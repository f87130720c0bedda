"""Recover a sum of exponentials from uniform samples (Prony's problem).

``y(n) = sum_k K_k lambda_k**n`` is the impulse response of a filter with
denominator ``prod_k (1 - lambda_k z^-1)`` and a numerator of degree
``N-1``.  The denominator comes from the time-domain design, its roots
give ``lambda_k`` and the amplitudes follow from a Vandermonde least-squares
fit.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateModeError, InvalidInputError, MultiplicityWarning
from .linalg import as_vec, lstsq, poly_roots
from .time_design import Mode, TimeDesignProblem, build_partition, solve_denominator

__all__ = [
    "ExponentialModel",
    "SampledSignal",
    "identify",
    "synthesize",
    "sort_modes",
]

# an exact double root comes back split by about sqrt(eps) ~ 1.5e-8
REPEAT_TOL = 1e-7
REAL_AXIS_TOL = 1e-10


def sort_modes(amplitudes, exponents, T):
    """Order modes by descending ``|lambda|``, then ascending ``angle(lambda)``."""
    lam = np.exp(np.asarray(exponents) * T)
    # rounding keeps conjugate partners tied despite last-bit differences
    order = np.lexsort((np.angle(lam), -np.round(np.abs(lam), 10)))
    return np.asarray(amplitudes)[order], np.asarray(exponents)[order]


@dataclass(frozen=True)
class ExponentialModel:
    """``x(t) = sum_k K_k exp(alpha_k t)`` sampled every `T` time units.

    Modes are stored sorted (see :func:`sort_modes`).  `residual_norm` is
    filled in by :func:`identify` and is ``None`` otherwise.
    """

    amplitudes: np.ndarray
    exponents: np.ndarray
    T: float = 1.0
    residual_norm: float = field(default=None, compare=False)

    def __post_init__(self):
        K = as_vec(self.amplitudes, "amplitudes")
        alpha = as_vec(self.exponents, "exponents")
        if K.size != alpha.size:
            raise InvalidInputError(f"{K.size} amplitudes but {alpha.size} exponents")
        if not self.T > 0:
            raise InvalidInputError(f"sample period must be positive, got {self.T}")
        K, alpha = sort_modes(K, alpha, self.T)
        object.__setattr__(self, "amplitudes", K)
        object.__setattr__(self, "exponents", alpha)

    @property
    def poles(self):
        """``lambda_k = exp(alpha_k T)``."""
        return np.exp(self.exponents * self.T)

    @property
    def modes(self):
        return list(zip(self.amplitudes, self.exponents))

    def __len__(self):
        return self.amplitudes.size


@dataclass(frozen=True)
class SampledSignal:
    y: np.ndarray
    T: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "y", as_vec(self.y, "y"))
        if not self.T > 0:
            raise InvalidInputError(f"sample period must be positive, got {self.T}")


def synthesize(model, count):
    """``y(m) = sum_k K_k exp(alpha_k T m)`` for ``m = 0..count-1``."""
    count = int(count)
    if count < 1:
        raise InvalidInputError(f"count must be at least 1, got {count}")
    m = np.arange(count)
    y = np.exp(np.outer(m * model.T, model.exponents)) @ model.amplitudes
    return SampledSignal(y, model.T)


def identify(sig, N):
    """Fit `N` exponential modes to `sig`.

    Uses exact interpolation when exactly ``2N`` samples are given and
    least-squared equation error when there are more.  Exponents use the
    principal logarithm, so ``Im(alpha)`` lies in ``(-pi/T, pi/T]``.

    Raises
    ------
    DegenerateModeError
        If a root is zero, which means the data has less memory than `N`
        modes; a lower order should be used.
    """
    N = int(N)
    if N < 1:
        raise InvalidInputError(f"model order must be at least 1, got {N}")
    y = sig.y
    if y.size < 2 * N:
        raise InvalidInputError(f"order {N} needs at least {2 * N} samples, got {y.size}")

    p = TimeDesignProblem(y, M=N - 1, N=N)
    mode = Mode.INTERPOLATE if y.size == 2 * N else Mode.LEAST_SQUARES
    a = solve_denominator(build_partition(p), mode)

    lam = poly_roots(a)
    if lam.size != N or np.any(np.abs(lam) <= 1e-12 * max(1.0, float(np.max(np.abs(lam))))):
        raise DegenerateModeError(
            f"characteristic polynomial has a zero root at order {N}; try a lower order")
    if N > 1:
        gaps = np.abs(lam[:, None] - lam[None, :]) + np.diag(np.full(N, np.inf))
        if np.min(gaps) < REPEAT_TOL * max(1.0, float(np.max(np.abs(lam)))):
            warnings.warn(
                "repeated roots detected; amplitudes of the form n*lambda**n are not modelled",
                MultiplicityWarning, stacklevel=2)

    # roots within rounding of the real axis are put on it (with +0.0 imaginary
    # part) so a negative real root maps to Im(alpha) = +pi/T, not -pi/T
    on_axis = np.abs(lam.imag) <= REAL_AXIS_TOL * np.abs(lam)
    lam = np.where(on_axis, lam.real + 0j, lam)
    V = lam[None, :] ** np.arange(y.size)[:, None]
    res = lstsq(V, y)
    K = res.solution
    if not np.any(y.imag):
        K = _conjugate_closed(K, lam)
    alpha = np.log(lam) / sig.T
    resid = float(np.linalg.norm(V @ K - y))
    return ExponentialModel(K, alpha, sig.T, residual_norm=resid)


def _conjugate_closed(K, lam):
    """Project amplitudes of real data onto the conjugate-symmetric set.

    Real data has a real characteristic polynomial whose roots come in exact
    conjugate pairs; the exact amplitudes then pair up the same way, so the
    projection only removes rounding noise.
    """
    K = K.copy()
    used = np.zeros(lam.size, dtype=bool)
    for i in range(lam.size):
        if used[i]:
            continue
        if lam[i].imag == 0:
            K[i] = K[i].real
            used[i] = True
            continue
        cand = np.flatnonzero(~used & (lam == np.conj(lam[i])))
        cand = cand[cand != i]
        if cand.size:
            j = cand[0]
            k = 0.5 * (K[i] + np.conj(K[j]))
            K[i], K[j] = k, np.conj(k)
            used[j] = True
        used[i] = True
    return K
