"""Long-signal extension: estimate per overlapping chunk, then crossfade.

When a signal carries many sharp features, no single observation is close to
the whole prototype, so the centrality estimate is run piecewise: dissect all
observations into overlapping chunks, estimate a template per chunk, and
recombine the per-chunk estimates with tapered windows.

Windows have a flat top and half-cosine ramps spanning exactly the overlap,
the leading ramp of the first piece and the trailing ramp of the last piece
replaced by flat extensions.  Shifted copies then sum to one everywhere
(constant overlap-add), so recombining unmodified chunks reproduces the
original signal.  The final chunk may be shifted backward to end flush with
the record, which makes its overlap wider than the ramp; the recombination
therefore divides by the accumulated window sum, a no-op for uniform spacing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_model import ObservationSet, Signal

# A one-sample chunk degenerates the estimate toward a point-wise statistic,
# which this method is explicitly not; keep chunks meaningfully long.
MIN_CHUNK_LEN = 16


@dataclass(frozen=True)
class ChunkPlan:
    """Dissection geometry for signals of a fixed length.

    chunk_len: samples per piece (>= MIN_CHUNK_LEN)
    hop:       offset between consecutive pieces; the overlap chunk_len - hop
               is also the taper ramp length, so hop >= chunk_len / 2 keeps
               the flat top non-negative (required for constant overlap-add)
    n_samples: length of the signals this plan dissects
    """

    chunk_len: int
    hop: int
    n_samples: int

    def __post_init__(self):
        if self.chunk_len < MIN_CHUNK_LEN:
            raise ValueError(f"chunk_len must be >= {MIN_CHUNK_LEN} samples")
        if not 0 < self.hop < self.chunk_len:
            raise ValueError("need 0 < hop < chunk_len")
        if 2 * self.hop < self.chunk_len:
            raise ValueError(
                "need hop >= chunk_len / 2: taper ramps of length "
                "chunk_len - hop would overlap each other"
            )
        if self.chunk_len > self.n_samples:
            raise ValueError("chunk_len exceeds the signal length")

    @property
    def taper(self) -> int:
        """Ramp length in samples (equals the nominal overlap)."""
        return self.chunk_len - self.hop

    @property
    def starts(self) -> list[int]:
        """Piece start offsets: multiples of hop, plus a final piece shifted
        backward to end exactly at the last sample when needed."""
        last = self.n_samples - self.chunk_len
        offsets = list(range(0, last + 1, self.hop))
        if offsets[-1] != last:
            offsets.append(last)
        return offsets

    @property
    def n_pieces(self) -> int:
        return len(self.starts)


def _up_ramp(length: int) -> np.ndarray:
    """Half-cosine rise; offset half a sample so no endpoint is exactly zero."""
    i = np.arange(length)
    return 0.5 * (1.0 - np.cos(np.pi * (i + 0.5) / length))


def piece_window(plan: ChunkPlan, index: int) -> np.ndarray:
    """Taper window for one piece: flat top, complementary cosine ramps.

    The trailing ramp is 1 minus the leading ramp so that adjacent windows
    sum to exactly one across a nominal overlap.
    """
    if not 0 <= index < plan.n_pieces:
        raise ValueError(f"piece index {index} out of range")
    w = np.ones(plan.chunk_len)
    ramp = _up_ramp(plan.taper)
    if index > 0:
        w[: plan.taper] = ramp
    if index < plan.n_pieces - 1:
        w[plan.hop :] = 1.0 - ramp
    return w


def dissect(obs: ObservationSet, plan: ChunkPlan) -> list[ObservationSet]:
    """Split every observation into the plan's overlapping pieces."""
    if obs.length != plan.n_samples:
        raise ValueError(
            f"plan is for length {plan.n_samples}, observations have {obs.length}"
        )
    return [
        ObservationSet(
            obs.data[:, s : s + plan.chunk_len].copy(),
            dt=obs.dt,
            t0=obs.t0 + s * obs.dt,
        )
        for s in plan.starts
    ]


def overlap_add(pieces: list[Signal], plan: ChunkPlan) -> Signal:
    """Recombine per-piece signals with tapered windows at the plan offsets.

    Each piece is multiplied by its window and summed in place; the result is
    divided by the accumulated window sum, which is one wherever spacing is
    uniform and stays positive everywhere.
    """
    starts = plan.starts
    if len(pieces) != len(starts):
        raise ValueError(f"plan has {len(starts)} pieces, got {len(pieces)}")
    for piece in pieces:
        if len(piece) != plan.chunk_len:
            raise ValueError("every piece must be chunk_len samples long")

    num = np.zeros(plan.n_samples)
    den = np.zeros(plan.n_samples)
    for index, (piece, s) in enumerate(zip(pieces, starts)):
        w = piece_window(plan, index)
        num[s : s + plan.chunk_len] += w * piece.samples
        den[s : s + plan.chunk_len] += w
    first = pieces[0]
    return Signal(num / den, dt=first.dt, t0=first.t0)


def estimate_template_chunked(
    obs: ObservationSet,
    plan: ChunkPlan,
    m: int = 10,
    j: int = 1000,
    k: int = 5,
    rng_seed: int = 0,
) -> Signal:
    """Dissect, estimate a template per piece, recombine.

    Pieces get independent Laplacians and centrality runs; piece t is seeded
    from (rng_seed, t) so parallel or reordered execution would not change
    the result.  A single-piece plan reduces to the plain estimate with the
    master seed itself, reproducing it bit for bit.
    """
    from .centrality import estimate_template

    pieces = dissect(obs, plan)
    if len(pieces) == 1:
        return estimate_template(pieces[0], m=m, j=j, k=k, rng_seed=rng_seed)[0]

    estimates = []
    for t, piece_obs in enumerate(pieces):
        seed_t = int(
            np.random.SeedSequence(entropy=(int(rng_seed), t)).generate_state(
                1, np.uint64
            )[0]
        )
        try:
            est, _, _ = estimate_template(piece_obs, m=m, j=j, k=k, rng_seed=seed_t)
        except Exception as exc:
            exc.args = (f"piece {t} (offset {plan.starts[t]}): {exc}",)
            raise
        estimates.append(est)
    return overlap_add(estimates, plan)
