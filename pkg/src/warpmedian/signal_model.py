"""Generative model for time-warped, noisy observations of a prototype signal.

An observation is ``f(t + u(t)) + noise``, where the warp offset ``u`` is one
draw from a zero-mean stationary Gaussian process with a squared-exponential
covariance ``h(t) = alpha * exp(-t^2 / (2 sigma^2))``.  The module also carries
``gaussian_blur_oracle``, an independent reference for what the plain
cross-sectional average converges to as the number of observations grows:
the prototype convolved with a normal pdf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CovarianceFactorizationError

# Diagonal jitter schedule for factoring the (ill-conditioned) squared
# exponential Gram matrix: start tiny, escalate x10 until this ceiling.
_JITTER_START = 1e-12
_JITTER_MAX = 1e-6


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled real-valued signal.

    samples: amplitudes (finite, non-empty)
    dt:      sample interval in seconds (> 0)
    t0:      time of the first sample in seconds
    """

    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-D array")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        """Sample times t0 + i*dt."""
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def duration(self) -> float:
        return (self.samples.size - 1) * self.dt


@dataclass(frozen=True)
class ObservationSet:
    """N equal-length signals on one shared grid, stored as an (N, L) matrix."""

    data: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        data = np.atleast_2d(np.asarray(self.data, dtype=float))
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("data must be a non-empty (N, L) matrix")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not np.all(np.isfinite(data)):
            raise ValueError("observations must be finite")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_signals(cls, signals: list[Signal]) -> "ObservationSet":
        if not signals:
            raise ValueError("need at least one signal")
        ref = signals[0]
        for s in signals[1:]:
            if len(s) != len(ref) or s.dt != ref.dt or s.t0 != ref.t0:
                raise ValueError("all signals must share one grid (L, dt, t0)")
        return cls(np.stack([s.samples for s in signals]), ref.dt, ref.t0)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def length(self) -> int:
        return self.data.shape[1]

    def signal(self, k: int) -> Signal:
        return Signal(self.data[k].copy(), self.dt, self.t0)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.length)


@dataclass(frozen=True)
class WarpKernelParams:
    """Squared-exponential warp covariance: alpha * exp(-t^2 / (2 sigma^2)).

    alpha: marginal variance of the warp offset, in seconds^2 (>= 0)
    sigma: correlation length in seconds (> 0)
    """

    alpha: float
    sigma: float

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def covariance(self, lags: np.ndarray) -> np.ndarray:
        """Kernel value at the given time lags (seconds)."""
        lags = np.asarray(lags, dtype=float)
        return self.alpha * np.exp(-(lags**2) / (2.0 * self.sigma**2))


@dataclass(frozen=True)
class WarpField:
    """One sampled warp-offset realization u; warps as g(t) = t + u(t)."""

    u: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        if u.ndim != 1 or u.size == 0:
            raise ValueError("u must be a non-empty 1-D array")
        object.__setattr__(self, "u", u)

    def __len__(self) -> int:
        return self.u.size


def _subseed(master_seed: int, index: int, stream: int) -> np.random.SeedSequence:
    """Per-observation seed derivation: child (index, stream) of the master seed.

    Depends only on (master_seed, index, stream), so observations can be
    generated in any order or concurrently with identical results.
    """
    return np.random.SeedSequence(entropy=(int(master_seed), int(index), int(stream)))


def _grid_cholesky(params: WarpKernelParams, grid_len: int, dt: float) -> np.ndarray:
    """Cholesky factor of the warp covariance on a uniform grid, with jitter."""
    t = dt * np.arange(grid_len)
    cov = params.covariance(t[:, None] - t[None, :])
    jitter = _JITTER_START * params.alpha
    while True:
        try:
            return np.linalg.cholesky(cov + jitter * np.eye(grid_len))
        except np.linalg.LinAlgError:
            jitter *= 10.0
            if jitter > _JITTER_MAX * params.alpha:
                raise CovarianceFactorizationError(
                    f"warp covariance numerically indefinite (grid_len={grid_len}, "
                    f"alpha={params.alpha}, sigma={params.sigma}); "
                    f"jitter escalated past {_JITTER_MAX:g}*alpha"
                ) from None


def sample_warp_field(
    params: WarpKernelParams,
    grid_len: int,
    dt: float,
    rng_seed: int | np.random.SeedSequence,
) -> WarpField:
    """Draw one warp-offset field on a uniform grid.

    Forms the grid covariance matrix, adds escalating diagonal jitter,
    Cholesky-factors it, and multiplies a standard-normal vector drawn from
    ``rng_seed``.  Deterministic given the seed.
    """
    if grid_len < 1:
        raise ValueError("grid_len must be >= 1")
    if not dt > 0:
        raise ValueError("dt must be positive")
    rng = np.random.default_rng(rng_seed)
    z = rng.standard_normal(grid_len)
    if params.alpha == 0.0:
        return WarpField(np.zeros(grid_len))
    chol = _grid_cholesky(params, grid_len, dt)
    return WarpField(chol @ z)


def apply_warp(f: Signal, warp: WarpField) -> Signal:
    """Evaluate f(t + u(t)) by linear interpolation on f's grid.

    Warped times falling outside [t0, t0 + (L-1) dt] are clamped to the
    domain endpoints.  A zero warp reproduces f bitwise.
    """
    if len(warp) != len(f):
        raise ValueError(f"warp length {len(warp)} != signal length {len(f)}")
    t = f.times
    warped = np.interp(t + warp.u, t, f.samples)
    return Signal(warped, f.dt, f.t0)


def generate_observations(
    f: Signal,
    params: WarpKernelParams,
    n: int,
    noise_std: float,
    rng_seed: int,
) -> ObservationSet:
    """Draw n independent warped, noisy observations of f.

    Observation k uses seeds derived from (rng_seed, k): stream 0 drives the
    warp draw and stream 1 the additive white Gaussian noise, so the result
    is independent of generation order.  Each row equals
    ``apply_warp(f, sample_warp_field(params, L, dt, seed_k)) + noise_k``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if noise_std < 0:
        raise ValueError("noise_std must be non-negative")
    grid_len = len(f)
    chol = None if params.alpha == 0.0 else _grid_cholesky(params, grid_len, f.dt)
    t = f.times
    data = np.empty((n, grid_len))
    for k in range(n):
        z = np.random.default_rng(_subseed(rng_seed, k, 0)).standard_normal(grid_len)
        u = np.zeros(grid_len) if chol is None else chol @ z
        row = np.interp(t + u, t, f.samples)
        if noise_std > 0:
            noise_rng = np.random.default_rng(_subseed(rng_seed, k, 1))
            row = row + noise_std * noise_rng.standard_normal(grid_len)
        data[k] = row
    return ObservationSet(data, f.dt, f.t0)


def ensemble_average(obs: ObservationSet) -> Signal:
    """Point-wise arithmetic mean across observations."""
    return Signal(obs.data.mean(axis=0), obs.dt, obs.t0)


def gaussian_blur_oracle(f: Signal, variance: float) -> Signal:
    """Convolve f with a discretized normal pdf of the given variance.

    The kernel is sampled on f's grid, truncated at +-5 standard deviations,
    and renormalized to unit discrete sum; boundaries use edge replication.
    This is the large-N limit of the plain cross-sectional average of warped
    observations, kept independent of the sampling path so it can serve as a
    reference in tests.
    """
    if not variance > 0:
        raise ValueError("variance must be positive")
    std = float(np.sqrt(variance))
    half = int(np.floor(5.0 * std / f.dt))
    if 2 * half + 1 < 3:
        raise ValueError(
            f"blur variance {variance:g} spans fewer than 3 kernel taps at dt={f.dt:g}"
        )
    offsets = f.dt * np.arange(-half, half + 1)
    kernel = np.exp(-(offsets**2) / (2.0 * variance))
    kernel /= kernel.sum()
    padded = np.pad(f.samples, half, mode="edge")
    blurred = np.convolve(padded, kernel, mode="valid")
    return Signal(blurred, f.dt, f.t0)
