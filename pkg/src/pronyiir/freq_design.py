"""Frequency-sampling design of IIR filters.

Samples ``H_k`` of the desired response at ``w_k = 2 pi k / (L+1)`` are
turned into a length-``L+1`` sequence by the inverse DFT.  That sequence is
the impulse response folded modulo ``L+1``, so ``B_k = H_k A_k`` becomes a
cyclic convolution and the same partitioned solve as the time-domain method
applies to the circulant matrix.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EvaluationError, InvalidInputError, InvalidOrderError, InvalidSpecError
from .linalg import as_vec, dft, idft
from .time_design import (
    Mode,
    RationalFilter,
    _solve_denominator,
    equation_error,
    partition_from_matrix,
    pole_diagnostics,
    solve_numerator,
)

__all__ = [
    "FrequencySpec",
    "FreqDesignReport",
    "grid",
    "pseudo_impulse",
    "cyclic_matrix",
    "build_cyclic_partition",
    "design_freq",
    "frequency_response",
    "linear_phase_samples",
    "band_magnitudes",
]

SYMMETRY_TOL = 1e-9
POLE_TOL = 1e-14


def grid(n):
    """The ``n`` DFT frequencies ``2 pi k / n`` in rad/sample."""
    return 2 * np.pi * np.arange(n) / n


@dataclass(frozen=True)
class FrequencySpec:
    """Equally spaced response samples and the orders to fit.

    With ``enforce_real`` the samples must be conjugate symmetric,
    ``H_k = conj(H_{-k mod L+1})``, which makes the designed coefficients
    real.
    """

    samples: np.ndarray
    M: int
    N: int
    enforce_real: bool = True

    def __post_init__(self):
        object.__setattr__(self, "samples", as_vec(self.samples, "samples"))
        if int(self.M) != self.M or int(self.N) != self.N or self.M < 0 or self.N < 0:
            raise InvalidOrderError(f"orders must be nonnegative integers, got M={self.M}, N={self.N}")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "N", int(self.N))
        if self.L < self.M + self.N:
            raise InvalidOrderError(
                f"{self.L + 1} frequency samples cannot determine M={self.M}, N={self.N}: "
                f"need at least {self.M + self.N + 1}")

    @property
    def L(self):
        return self.samples.size - 1

    @property
    def omegas(self):
        return grid(self.L + 1)


@dataclass(frozen=True)
class FreqDesignReport:
    """Diagnostics of a frequency-domain design.

    Attributes
    ----------
    equation_error : ndarray
        ``eps_k = B_k - H_k A_k`` on the design grid.
    response_error : ndarray
        ``B_k / A_k - H_k``; NaN where ``|A_k| <= 1e-12``.
    equation_error_time : ndarray
        Inverse DFT of `equation_error`, i.e. ``(b, 0) - H0 a`` for the
        circulant system; its first ``M+1`` entries vanish.
    """

    equation_error: np.ndarray
    response_error: np.ndarray
    equation_error_time: np.ndarray
    A_k: np.ndarray
    B_k: np.ndarray
    poles: np.ndarray
    pole_moduli: np.ndarray
    stable: bool
    condition_estimate: float
    rank: int
    mode: Mode

    @property
    def equation_error_norm(self):
        return float(np.linalg.norm(self.equation_error))

    @property
    def response_error_norm(self):
        e = self.response_error
        return float(np.linalg.norm(e[np.isfinite(e)]))


def _check_symmetry(H):
    n = H.size
    mirror = np.conj(H[(-np.arange(n)) % n])
    dev = np.abs(H - mirror)
    tol = SYMMETRY_TOL * max(1.0, float(np.max(np.abs(H))))
    worst = int(np.argmax(dev))
    if dev[worst] > tol:
        raise InvalidSpecError(
            f"samples are not conjugate symmetric: |H[{worst}] - conj(H[{(-worst) % n}])| = "
            f"{dev[worst]:.3g}")


def pseudo_impulse(spec):
    """Inverse DFT of the samples: the aliased impulse response."""
    if spec.enforce_real:
        _check_symmetry(spec.samples)
    return idft(spec.samples)


def cyclic_matrix(h):
    """Circulant matrix ``C[i, j] = h[(i - j) mod n]``."""
    h = as_vec(h, "h")
    n = h.size
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return h[idx]


def build_cyclic_partition(h, M, N):
    """Partition the first ``N+1`` columns of the circulant of `h`."""
    h = as_vec(h, "h")
    L = h.size - 1
    if M < 0 or N < 0 or L < M + N:
        raise InvalidOrderError(f"length {L + 1} cannot determine M={M}, N={N}")
    return partition_from_matrix(cyclic_matrix(h)[:, :N + 1], M)


def _padded_dft(c, n):
    x = np.zeros(n, dtype=np.complex128)
    x[:c.size] = c
    return dft(x)


def design_freq(spec, mode="interp"):
    """Design ``(b, a)`` from equally spaced frequency-response samples.

    Parameters
    ----------
    spec : FrequencySpec
    mode : Mode or {'interp', 'ls'}
        ``'interp'`` needs exactly ``M+N+1`` samples and passes the response
        through every one of them; ``'ls'`` minimizes the squared equation
        error ``sum |B_k - H_k A_k|^2`` over more samples.

    Returns
    -------
    filt : RationalFilter
    report : FreqDesignReport
    """
    mode = Mode.coerce(mode)
    h = pseudo_impulse(spec)
    part = build_cyclic_partition(h, spec.M, spec.N)
    a, rank, cond = _solve_denominator(part, mode)
    b = solve_numerator(part, a)

    n = spec.L + 1
    A_k = _padded_dft(a, n)
    B_k = _padded_dft(b, n)
    eps = B_k - spec.samples * A_k
    resp = np.full(n, np.nan + 0j)
    ok = np.abs(A_k) > 1e-12
    resp[ok] = B_k[ok] / A_k[ok] - spec.samples[ok]

    poles, moduli, stable = pole_diagnostics(a)
    report = FreqDesignReport(
        equation_error=eps,
        response_error=resp,
        equation_error_time=equation_error(part, b, a),
        A_k=A_k,
        B_k=B_k,
        poles=poles,
        pole_moduli=moduli,
        stable=stable,
        condition_estimate=cond,
        rank=rank,
        mode=mode,
    )
    return RationalFilter(b, a), report


def frequency_response(f, omegas):
    """``H(w) = B / A`` with ``z^-1 = exp(-j w)``, evaluated pointwise.

    Raises :class:`EvaluationError` where ``|A| < 1e-14`` (a pole on the unit
    circle at that frequency).
    """
    w = np.atleast_1d(np.asarray(omegas, dtype=float))
    if w.ndim != 1:
        raise InvalidInputError("omegas must be one-dimensional")
    zinv = np.exp(-1j * w)
    powers_b = zinv[:, None] ** np.arange(f.b.size)[None, :]
    powers_a = zinv[:, None] ** np.arange(f.a.size)[None, :]
    B = powers_b @ f.b
    A = powers_a @ f.a
    bad = np.flatnonzero(np.abs(A) < POLE_TOL)
    if bad.size:
        raise EvaluationError(f"pole on the unit circle at omega = {w[bad[0]]!r} rad/sample")
    return B / A


def band_magnitudes(n, bands):
    """Magnitude of each of `n` grid samples from a piecewise-constant band list.

    `bands` is a sequence of ``(lo, hi, magnitude)`` with edges as fractions
    of the sampling rate in ``[0, 0.5]``.  Sample ``k`` sits at
    ``min(k/n, 1 - k/n)`` and takes the magnitude of the first band with
    ``lo <= f <= hi``.
    """
    f = np.arange(n) / n
    f = np.minimum(f, 1.0 - f)
    mags = np.full(n, np.nan)
    for lo, hi, mag in bands:
        if not 0.0 <= lo <= hi <= 0.5:
            raise InvalidInputError(f"band edges must satisfy 0 <= lo <= hi <= 0.5, got ({lo}, {hi})")
        hit = np.isnan(mags) & (f >= lo) & (f <= hi)
        mags[hit] = mag
    missing = np.flatnonzero(np.isnan(mags))
    if missing.size:
        raise InvalidInputError(
            f"sample {missing[0]} at frequency {f[missing[0]]:.6g} is not covered by any band")
    return mags


def linear_phase_samples(magnitudes, group_delay):
    """Attach the phase ``exp(-j w tau)`` to real magnitudes on the DFT grid.

    Frequencies above ``pi`` are treated as negative so the result stays
    conjugate symmetric for any delay; at the Nyquist bin of an even-length
    grid only the real part of the phase factor is kept.
    """
    mags = np.asarray(magnitudes, dtype=float)
    n = mags.size
    k = np.arange(n)
    signed = np.where(k <= n // 2, k, k - n)
    w = 2 * np.pi * signed / n
    phase = np.exp(-1j * w * group_delay)
    if n % 2 == 0:
        phase[n // 2] = phase[n // 2].real
    return mags * phase
