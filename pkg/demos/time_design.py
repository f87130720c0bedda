# # Time-domain IIR design from impulse-response samples
#
# A rational filter of numerator degree M and denominator degree N has
# M + N + 1 free coefficients, so M + N + 1 impulse samples pin it down.

import numpy as np
import scipy.signal

from pronyiir import TimeDesignProblem, design_time, impulse_response

# ## Round trip on a known filter

b = np.array([1.0, 0.4, -0.2])
a = np.array([1.0, -0.9, 0.5])
h = scipy.signal.lfilter(b, a, np.r_[1.0, np.zeros(4)])

filt, report = design_time(TimeDesignProblem(h, M=2, N=2), "interp")
print("b =", np.round(filt.b.real, 12))
print("a =", np.round(filt.a.real, 12))
print("pole moduli:", np.round(report.pole_moduli, 4), "stable:", report.stable)

# ## Interpolation says nothing past the last sample
#
# Fit a second-order filter to the first five samples of a longer
# response and compare further out.

target = 0.8 ** np.arange(20) * np.cos(0.7 * np.arange(20)) + 0.3 * 0.5 ** np.arange(20)
filt, _ = design_time(TimeDesignProblem(target[:5], M=2, N=2), "interp")
got = impulse_response(filt, 20).real
print("max mismatch on samples 0..4:", np.max(np.abs(got[:5] - target[:5])))
print("max mismatch on samples 5..19:", np.max(np.abs(got[5:] - target[5:])))

# ## Least squares over a longer record
#
# With more samples than unknowns the equation error is minimized instead.

filt, report = design_time(TimeDesignProblem(target, M=2, N=2), "ls")
got = impulse_response(filt, 20).real
print("equation error norm:", report.equation_error_norm)
print("max impulse mismatch:", np.max(np.abs(got - target)))
