"""Why plain averaging fails: the cross-sectional mean is a Gaussian blur.

Averaging N warped observations converges, point by point, to the truth
convolved with a normal pdf whose variance is the warp variance.  Sharp
features are rounded off no matter how large N grows.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from warpmedian import WarpKernelParams, ensemble_average, gaussian_blur_oracle, generate_observations
from warpmedian.synthetic import default_test_signal

truth = default_test_signal(401)
alpha = 4e-4
params = WarpKernelParams(alpha=alpha, sigma=0.1)
blur = gaussian_blur_oracle(truth, variance=alpha)

obs = generate_observations(truth, params, n=4000, noise_std=0.02, rng_seed=0)
print("RMS distance of the N-observation average to the blur limit:")
for n in (250, 1000, 4000):
    avg = obs.data[:n].mean(axis=0)
    rms = np.sqrt(np.mean((avg - blur.samples) ** 2))
    print(f"  N = {n:5d}: {rms:.5f}")

fig, ax = plt.subplots(figsize=(8, 4))
t = truth.times
ax.plot(t, truth.samples, "k", lw=1.8, label="truth")
ax.plot(t, ensemble_average(obs).samples, lw=1.4, label="average of 4000")
ax.plot(t, blur.samples, "--", lw=1.4, label="blur limit")
ax.set_xlabel("time (s)")
ax.set_ylabel("amplitude")
ax.legend()
ax.set_title("the ensemble average converges to a blurred signal, not the truth")
fig.tight_layout()
fig.savefig("demo_02_average_vs_blur.png", dpi=120)
print("wrote demo_02_average_vs_blur.png")
