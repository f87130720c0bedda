# # Recovering damped sinusoids from a few samples
#
# A signal made of N complex exponentials is determined by 2N uniform samples.

import numpy as np

from pronyiir import ExponentialModel, SampledSignal, identify, synthesize

T = 0.01
truth = ExponentialModel(
    amplitudes=[1.5, 0.5 - 0.25j, 0.5 + 0.25j],
    exponents=[-3.0, -8.0 + 2j * np.pi * 12, -8.0 - 2j * np.pi * 12],
    T=T,
)

sig = synthesize(truth, 6)
found = identify(SampledSignal(sig.y.real, T), 3)
for K, alpha in found.modes:
    print(f"  K = {K:.6f}   alpha = {alpha:.6f}")
print("residual:", found.residual_norm)

# ## More samples than needed, with noise
#
# Extra samples switch to a least-squares fit of the linear prediction
# equations; the estimates degrade gracefully with the noise level.

rng = np.random.default_rng(3)
y = synthesize(truth, 60).y.real + 1e-4 * rng.standard_normal(60)
noisy = identify(SampledSignal(y, T), 3)
for K, alpha in noisy.modes:
    print(f"  K = {K:.4f}   alpha = {alpha:.4f}")
