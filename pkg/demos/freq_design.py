# # Frequency-sampling design: a sixth-order lowpass
#
# Forty-one equally spaced samples of an ideal lowpass (one below 0.2 of the
# sampling rate, zero above) with a linear phase of six samples delay are fit
# by a filter with six zeros and six poles.

import numpy as np

from pronyiir import (
    FrequencySpec,
    RationalFilter,
    band_magnitudes,
    design_freq,
    frequency_response,
    linear_phase_samples,
)

n = 41
mags = band_magnitudes(n, [(0.0, 0.2, 1.0), (0.2, 0.5, 0.0)])
H = linear_phase_samples(mags, 6.0)

filt, report = design_freq(FrequencySpec(H, M=6, N=6), "ls")
print("b =", np.round(filt.b.real, 6))
print("a =", np.round(filt.a.real, 6))
print("pole moduli:", np.round(np.sort(report.pole_moduli), 4))
print("stable:", report.stable, " condition estimate: %.3g" % report.condition_estimate)

# ## Equation error versus response error
#
# The two errors differ by the factor A_k at every grid point.

gap = report.response_error * report.A_k - report.equation_error
print("max |E_k A_k - eps_k|:", np.max(np.abs(gap)))

# ## Magnitude on a dense grid

w = np.linspace(0, np.pi, 9)
for wi, r in zip(w, frequency_response(filt, w)):
    print(f"  f = {wi / (2 * np.pi):.4f}  |H| = {abs(r):.4f}")

# ## Exact interpolation with M + N + 1 samples
#
# Sampling a known filter at exactly M + N + 1 grid points recovers it.

b = np.array([0.2, 0.3, 0.2])
a = np.array([1.0, -0.6, 0.3])
grid = 2 * np.pi * np.arange(5) / 5
samples = frequency_response(RationalFilter(b, a), grid)
filt, _ = design_freq(FrequencySpec(samples, M=2, N=2), "interp")
print("recovered b:", np.round(filt.b.real, 12), " a:", np.round(filt.a.real, 12))
