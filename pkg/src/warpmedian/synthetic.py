"""Synthetic inputs for demos and verification.

The default test signal concentrates its information in three sharp features
(a spike, a step, a notch) whose locations move under warping, which is what
separates the centrality estimate from plain averaging.
"""

from __future__ import annotations

import numpy as np

from .graph import SparseLaplacian
from .signal_model import Signal

# Locations of the sharp features of the default test signal, on [0, 1].
DEFAULT_FEATURES = (0.15, 0.45, 0.60)


def default_test_signal(n_samples: int = 401) -> Signal:
    """Piecewise-linear test signal on [0, 1] with three sharp features.

    A triangular spike at t = 0.15, an amplitude step at t = 0.45, and a
    triangular notch at t = 0.60.  Plain averaging of warped copies rounds
    all three; a good template estimate keeps them sharp.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    t = np.linspace(0.0, 1.0, n_samples)

    def triangle(center: float, half_width: float, height: float) -> np.ndarray:
        return height * np.clip(1.0 - np.abs(t - center) / half_width, 0.0, None)

    samples = (
        triangle(DEFAULT_FEATURES[0], 0.03, 1.0)
        + 0.8 * (t >= DEFAULT_FEATURES[1])
        + triangle(DEFAULT_FEATURES[2], 0.03, -0.7)
    )
    return Signal(samples, dt=t[1] - t[0], t0=0.0)


def beat_train(
    duration_s: float = 240.0,
    fs: float = 360.0,
    rng_seed: int = 0,
    mean_interval_s: float = 0.8,
    interval_jitter_s: float = 0.02,
    anomaly_rate: float = 0.05,
    anomaly_intervals_s: tuple[float, float] = (0.58, 0.95),
    noise_std: float = 0.01,
) -> Signal:
    """Long pseudo-periodic record of stereotyped beats with rare anomalies.

    Beat onsets are spaced mean_interval_s apart with Gaussian jitter; a
    fraction anomaly_rate of the intervals is replaced by one of the
    anomaly_intervals_s values (short or long).  Each beat is a sharp spike
    followed by a small bump, with mild amplitude variation so no two beats
    are identical.
    """
    rng = np.random.default_rng(rng_seed)
    dt = 1.0 / fs
    n = int(round(duration_s * fs))
    t = dt * np.arange(n)
    samples = np.zeros(n)

    beat_times = []
    now = mean_interval_s
    while now < duration_s - 1.5:
        beat_times.append(now)
        if rng.random() < anomaly_rate:
            step = anomaly_intervals_s[int(rng.integers(len(anomaly_intervals_s)))]
        else:
            step = mean_interval_s + interval_jitter_s * rng.standard_normal()
        now += max(step, 0.4)

    for bt in beat_times:
        amp = 1.0 + 0.05 * rng.standard_normal()
        spike = amp * np.exp(-((t - bt) ** 2) / (2 * 0.008**2))
        bump = 0.25 * amp * np.exp(-((t - bt - 0.22) ** 2) / (2 * 0.04**2))
        samples += spike + bump
    samples += noise_std * rng.standard_normal(n)
    return Signal(samples, dt=dt, t0=0.0)


def grid_arc_points(
    n_angular: int = 24,
    n_radial: int = 3,
    radius: tuple[float, float] = (0.8, 1.0),
    angle_deg: tuple[float, float] = (20.0, 200.0),
) -> np.ndarray:
    """Points of a regular grid laid over an asymmetric planar arc.

    The arc is curved enough that the coordinate mean of the points falls
    outside the band, which is the geometric situation where a set-member
    "center" is preferable to the mean.
    """
    angles = np.deg2rad(np.linspace(angle_deg[0], angle_deg[1], n_angular))
    radii = np.linspace(radius[0], radius[1], n_radial)
    pts = [(r * np.cos(a), r * np.sin(a)) for a in angles for r in radii]
    return np.asarray(pts)


def grid_adjacency_laplacian(shape: tuple[int, int]) -> SparseLaplacian:
    """Unit-weight 4-neighbor Laplacian for points indexed on a (rows, cols) grid."""
    rows, cols = shape
    n = rows * cols
    dense = np.zeros((n, n))
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            for rr, cc in ((r + 1, c), (r, c + 1)):
                if rr < rows and cc < cols:
                    k = rr * cols + cc
                    dense[i, k] = dense[k, i] = -1.0
    np.fill_diagonal(dense, -dense.sum(axis=1))
    return SparseLaplacian.from_dense(dense)
