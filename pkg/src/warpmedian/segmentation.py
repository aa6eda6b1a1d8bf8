"""Turn a long quasi-periodic record into an observation set.

Beats are located with a deliberately simple detector (threshold + local
maximum + minimum-distance pruning); a fixed window around each peak becomes
one observation, with the peak pinned at t = 0 so downstream distances
compare aligned excerpts.  Swap in a better detector upstream if the records
need one; everything here only assumes sorted peak indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .errors import SegmentationError
from .signal_model import ObservationSet, Signal


@dataclass(frozen=True)
class SegmentationParams:
    """Excerpt geometry and peak-detector settings.

    pre_s / post_s:        window extent before/after each peak, seconds
    min_peak_distance_s:   closer peaks are pruned, keeping the taller one
    peak_threshold:        minimum peak height; absolute amplitude when
                           threshold_mode == "absolute", otherwise a factor
                           applied to the given amplitude quantile
    """

    pre_s: float = 0.1
    post_s: float = 1.0
    min_peak_distance_s: float = 0.3
    peak_threshold: float = 0.6
    threshold_mode: str = "quantile"
    threshold_quantile: float = 0.99

    def __post_init__(self):
        if self.pre_s < 0 or self.post_s <= 0:
            raise ValueError("need pre_s >= 0 and post_s > 0")
        if not self.min_peak_distance_s > 0:
            raise ValueError("min_peak_distance_s must be positive")
        if self.threshold_mode not in ("absolute", "quantile"):
            raise ValueError("threshold_mode must be 'absolute' or 'quantile'")
        if not 0 < self.threshold_quantile <= 1:
            raise ValueError("threshold_quantile must lie in (0, 1]")

    def height(self, samples: np.ndarray) -> float:
        """Effective detector threshold for a given record."""
        if self.threshold_mode == "absolute":
            return self.peak_threshold
        return self.peak_threshold * float(
            np.quantile(samples, self.threshold_quantile)
        )

    def window_samples(self, dt: float) -> tuple[int, int]:
        """(before, after) window extents in samples, rounded to nearest."""
        return int(round(self.pre_s / dt)), int(round(self.post_s / dt))


def detect_peaks(sig: Signal, params: SegmentationParams) -> np.ndarray:
    """Indices of local maxima above threshold, pruned to the minimum distance.

    Pruning is greedy by amplitude: when two candidates are closer than
    min_peak_distance_s, the taller survives.  Sorted ascending; an empty
    result is valid.
    """
    peaks, _ = find_peaks(
        sig.samples,
        height=params.height(sig.samples),
        distance=params.min_peak_distance_s / sig.dt,
    )
    return peaks


def extract_excerpts(
    sig: Signal, peaks: np.ndarray, params: SegmentationParams
) -> ObservationSet:
    """Cut one fixed-length window per peak, peak pinned at t = 0.

    Window for a peak at index p is [p - round(pre_s/dt), p + round(post_s/dt)]
    inclusive; windows running past either end of the record are dropped
    (the caller can count drops as len(peaks) - result.n).  Raises when no
    window survives.
    """
    peaks = np.asarray(peaks, dtype=int)
    before, after = params.window_samples(sig.dt)
    rows = []
    for p in peaks:
        lo, hi = p - before, p + after
        if lo < 0 or hi >= len(sig):
            continue
        rows.append(sig.samples[lo : hi + 1])
    if not rows:
        raise SegmentationError(
            f"no peak window of {before + after + 1} samples fits inside the record"
        )
    return ObservationSet(np.stack(rows), dt=sig.dt, t0=-params.pre_s)


def peak_to_peak_distances(
    obs: ObservationSet, params: SegmentationParams
) -> np.ndarray:
    """Seconds between the first two detected peaks of each excerpt.

    The detector is re-run inside each excerpt; excerpts with fewer than two
    peaks yield NaN markers.
    """
    out = np.full(obs.n, np.nan)
    for k in range(obs.n):
        peaks = detect_peaks(obs.signal(k), params)
        if peaks.size >= 2:
            out[k] = (peaks[1] - peaks[0]) * obs.dt
    return out
