import numpy as np
import pytest

from warpmedian.chunking import (
    ChunkPlan,
    dissect,
    estimate_template_chunked,
    overlap_add,
    piece_window,
)
from warpmedian.errors import DuplicateObservationsError
from warpmedian.centrality import estimate_template
from warpmedian.signal_model import ObservationSet, Signal


def random_obs(rng, n, length):
    return ObservationSet(rng.standard_normal((n, length)), dt=0.01)


class TestChunkPlan:
    def test_validation(self):
        with pytest.raises(ValueError):
            ChunkPlan(chunk_len=8, hop=6, n_samples=100)  # below the 16-sample floor
        with pytest.raises(ValueError):
            ChunkPlan(chunk_len=32, hop=0, n_samples=100)
        with pytest.raises(ValueError):
            ChunkPlan(chunk_len=32, hop=32, n_samples=100)
        with pytest.raises(ValueError):
            ChunkPlan(chunk_len=32, hop=12, n_samples=100)  # ramps would overlap
        with pytest.raises(ValueError):
            ChunkPlan(chunk_len=64, hop=48, n_samples=32)

    def test_start_arithmetic_exact_cover(self):
        # hop divides the remaining length: last nominal start is the clamp target
        plan = ChunkPlan(chunk_len=24, hop=16, n_samples=40)
        assert plan.starts == [0, 16]
        assert plan.taper == 8

    def test_start_arithmetic_clamped_tail(self):
        plan = ChunkPlan(chunk_len=24, hop=16, n_samples=44)
        assert plan.starts == [0, 16, 20]  # final piece pulled back to end flush

    def test_single_piece_plan(self):
        plan = ChunkPlan(chunk_len=64, hop=48, n_samples=64)
        assert plan.starts == [0]
        assert plan.n_pieces == 1


class TestWindows:
    @pytest.mark.parametrize("chunk_len,hop", [(32, 16), (32, 24), (48, 31), (64, 33)])
    def test_cola_sum_is_one(self, chunk_len, hop):
        n_pieces = 7
        total = (n_pieces - 1) * hop + chunk_len
        plan = ChunkPlan(chunk_len=chunk_len, hop=hop, n_samples=total)
        assert plan.starts == [t * hop for t in range(n_pieces)]
        acc = np.zeros(total)
        for t in range(n_pieces):
            acc[t * hop : t * hop + chunk_len] += piece_window(plan, t)
        assert np.max(np.abs(acc - 1.0)) <= 1e-12

    def test_single_window_is_flat(self):
        plan = ChunkPlan(chunk_len=32, hop=16, n_samples=32)
        assert np.array_equal(piece_window(plan, 0), np.ones(32))


class TestDissectAndOverlapAdd:
    def test_single_piece_roundtrip_identity(self):
        rng = np.random.default_rng(0)
        obs = random_obs(rng, 3, 64)
        plan = ChunkPlan(chunk_len=64, hop=40, n_samples=64)
        pieces = dissect(obs, plan)
        assert len(pieces) == 1
        assert np.array_equal(pieces[0].data, obs.data)
        sig = Signal(obs.data[0].copy(), dt=obs.dt)
        assert np.array_equal(overlap_add([sig], plan).samples, sig.samples)

    @pytest.mark.parametrize("length", [96, 100])  # uniform and clamped-tail plans
    def test_reconstruction_of_unmodified_pieces(self, length):
        rng = np.random.default_rng(1)
        signal = rng.standard_normal(length)
        obs = ObservationSet(signal[None, :], dt=0.01)
        plan = ChunkPlan(chunk_len=32, hop=16, n_samples=length)
        pieces = dissect(obs, plan)
        rebuilt = overlap_add([p.signal(0) for p in pieces], plan)
        np.testing.assert_allclose(rebuilt.samples, signal, rtol=0, atol=1e-12)
        assert len(rebuilt) == length

    def test_all_ones_pieces(self):
        plan = ChunkPlan(chunk_len=32, hop=20, n_samples=112)
        pieces = [Signal(np.ones(32), dt=0.01, t0=s * 0.01) for s in plan.starts]
        out = overlap_add(pieces, plan)
        np.testing.assert_allclose(out.samples, np.ones(112), rtol=0, atol=1e-12)

    def test_crossfade_between_offset_ramps(self):
        # two pieces carrying the same ramp offset by a constant: the overlap
        # must sweep monotonically from one to the other
        chunk_len, hop = 32, 20
        total = hop + chunk_len
        plan = ChunkPlan(chunk_len=chunk_len, hop=hop, n_samples=total)
        base = np.arange(total, dtype=float)
        delta = 5.0
        p0 = Signal(base[:chunk_len].copy(), dt=1.0)
        p1 = Signal(base[hop:].copy() + delta, dt=1.0, t0=hop)
        out = overlap_add([p0, p1], plan)

        ramp = 0.5 * (1.0 - np.cos(np.pi * (np.arange(chunk_len - hop) + 0.5) / (chunk_len - hop)))
        overlap = slice(hop, chunk_len)
        expected = base[overlap] + delta * ramp
        np.testing.assert_allclose(out.samples[overlap], expected, rtol=1e-12)
        assert np.all(np.diff(out.samples[overlap]) > 0)
        np.testing.assert_allclose(out.samples[:hop], base[:hop], rtol=0, atol=0)
        np.testing.assert_allclose(out.samples[chunk_len:], base[chunk_len:] + delta, rtol=1e-12)

    def test_dissect_validation(self):
        rng = np.random.default_rng(2)
        obs = random_obs(rng, 2, 50)
        plan = ChunkPlan(chunk_len=32, hop=16, n_samples=64)
        with pytest.raises(ValueError):
            dissect(obs, plan)

    def test_overlap_add_validation(self):
        plan = ChunkPlan(chunk_len=32, hop=16, n_samples=64)
        good = Signal(np.ones(32), dt=1.0)
        with pytest.raises(ValueError):
            overlap_add([good], plan)  # plan expects 3 pieces
        with pytest.raises(ValueError):
            overlap_add([good, good, Signal(np.ones(31), dt=1.0)], plan)


class TestEstimateTemplateChunked:
    def test_single_chunk_plan_is_bitwise_degenerate(self):
        rng = np.random.default_rng(1)
        obs = random_obs(rng, 30, 64)
        plan = ChunkPlan(chunk_len=64, hop=40, n_samples=64)
        chunked = estimate_template_chunked(obs, plan, m=4, j=100, k=3, rng_seed=5)
        direct, _, _ = estimate_template(obs, m=4, j=100, k=3, rng_seed=5)
        assert np.array_equal(chunked.samples, direct.samples)

    def test_multi_chunk_run_is_deterministic(self):
        rng = np.random.default_rng(1)
        obs = random_obs(rng, 24, 96)
        plan = ChunkPlan(chunk_len=48, hop=32, n_samples=96)
        a = estimate_template_chunked(obs, plan, m=4, j=80, k=3, rng_seed=7)
        b = estimate_template_chunked(obs, plan, m=4, j=80, k=3, rng_seed=7)
        assert np.array_equal(a.samples, b.samples)
        assert len(a) == 96

    def test_chunked_beats_unchunked_on_feature_rich_signal(self):
        # with a dozen independently-warped sharp features, no single
        # observation aligns everywhere, so per-chunk estimation wins
        from warpmedian.signal_model import WarpKernelParams, generate_observations

        n_samples = 1200
        t = np.linspace(0.0, 6.0, n_samples)
        samples = np.zeros(n_samples)
        centers = np.linspace(0.3, 5.7, 12)
        signs = np.where(np.arange(12) % 2 == 0, 1.0, -0.8)
        for c, s in zip(centers, signs):
            samples += s * np.clip(1.0 - np.abs(t - c) / 0.08, 0.0, None)
        truth = Signal(samples, dt=t[1] - t[0])

        params = WarpKernelParams(alpha=4e-4, sigma=0.1)
        plan = ChunkPlan(chunk_len=200, hop=120, n_samples=n_samples)
        for seed in (0, 1):
            obs = generate_observations(truth, params, n=120, noise_std=0.02, rng_seed=seed)
            unchunked, _, _ = estimate_template(obs, m=12, j=300, k=5, rng_seed=seed)
            chunked = estimate_template_chunked(obs, plan, m=12, j=300, k=5, rng_seed=seed)
            err_unchunked = np.linalg.norm(unchunked.samples - truth.samples)
            err_chunked = np.linalg.norm(chunked.samples - truth.samples)
            assert err_chunked < err_unchunked

    def test_piece_failures_report_piece_index(self):
        rng = np.random.default_rng(5)
        data = rng.standard_normal((8, 96))
        data[:, 32:80] = 0.0  # middle piece sees identical all-zero rows
        obs = ObservationSet(data, dt=0.01)
        plan = ChunkPlan(chunk_len=48, hop=32, n_samples=96)
        with pytest.raises(DuplicateObservationsError, match="piece 1"):
            estimate_template_chunked(obs, plan, m=2, j=40, k=2, rng_seed=0)
