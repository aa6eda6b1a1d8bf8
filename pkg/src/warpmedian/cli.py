"""Command-line surface: synth, segment, estimate, blur-oracle, replay.

Every subcommand is a pure function of its input files, flags, and seed:
rerunning with the same inputs produces byte-identical data files.  To keep
that guarantee independent of the machine and of --threads, numeric library
thread pools are pinned to one thread while a command runs (the pipeline
itself is sequential; --threads is accepted, validated, and recorded).

Exit codes: 0 ok, 2 usage, 3 no usable excerpts, 4 disconnected graph,
5 degenerate duplicate observations, 1 anything else.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from . import io
from .centrality import (
    central_average,
    centrality_scores,
    rank_by_centrality,
)
from .chunking import ChunkPlan, estimate_template_chunked
from .errors import (
    DisconnectedGraphError,
    DuplicateObservationsError,
    IsolatedNodeError,
    SegmentationError,
    WarpMedianError,
)
from .graph import GraphBuildParams, build_laplacian, is_connected
from .segmentation import SegmentationParams, detect_peaks, extract_excerpts
from .signal_model import WarpKernelParams, generate_observations, gaussian_blur_oracle
from .synthetic import default_test_signal

THREADS_ENV_VAR = "WARPMEDIAN_THREADS"

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_USAGE = 2
EXIT_NO_EXCERPTS = 3
EXIT_DISCONNECTED = 4
EXIT_DUPLICATES = 5


class UsageError(Exception):
    """Bad flag values detected before any work starts."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise UsageError(message)


def _resolve_threads(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(THREADS_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV_VAR}={env!r} is not an integer") from None
        _require(value >= 1, f"{THREADS_ENV_VAR} must be >= 1")
        return value
    return os.cpu_count() or 1


class _StageTimer:
    """Collects per-stage wall-clock timings for the run manifest."""

    def __init__(self):
        self.records: list[dict] = []

    def run(self, stage: str, fn):
        start = time.perf_counter()
        result = fn()
        self.records.append(
            {
                "record": "stage",
                "stage": stage,
                "seconds": time.perf_counter() - start,
            }
        )
        return result


def cmd_synth(args: argparse.Namespace) -> int:
    _require(args.n >= 1, "--n must be >= 1")
    _require(args.alpha >= 0, "--alpha must be >= 0")
    _require(args.sigma > 0, "--sigma must be > 0")
    _require(args.noise_std >= 0, "--noise-std must be >= 0")
    _require(args.samples >= 2, "--samples must be >= 2")

    if args.truth is not None:
        truth = io.read_signal_csv(args.truth)
    else:
        truth = default_test_signal(args.samples)
    params = WarpKernelParams(alpha=args.alpha, sigma=args.sigma)
    obs = generate_observations(truth, params, args.n, args.noise_std, args.seed)

    io.write_signal_csv(args.truth_out, truth)
    io.write_observations_csv(args.obs_out, obs)
    print(f"seed: {args.seed}")
    print(f"wrote {args.truth_out} ({len(truth)} samples)")
    print(f"wrote {args.obs_out} ({obs.n} observations x {obs.length} samples)")
    return EXIT_OK


def cmd_segment(args: argparse.Namespace) -> int:
    _require(args.pre >= 0, "--pre must be >= 0")
    _require(args.post > 0, "--post must be > 0")
    _require(args.min_distance > 0, "--min-distance must be > 0")

    record = io.read_signal_csv(args.record)
    params = SegmentationParams(
        pre_s=args.pre,
        post_s=args.post,
        min_peak_distance_s=args.min_distance,
        peak_threshold=args.threshold,
        threshold_mode=args.threshold_mode,
        threshold_quantile=args.quantile,
    )
    peaks = detect_peaks(record, params)
    obs = extract_excerpts(record, peaks, params)

    io.write_observations_csv(args.obs_out, obs)
    io.write_peaks_csv(args.peaks_out, peaks, record)
    print(f"peaks: {peaks.size}")
    print(f"excerpts: {obs.n} of length {obs.length} samples")
    print(f"dropped: {peaks.size - obs.n} boundary windows")
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace) -> int:
    _require(args.m >= 1, "--m must be >= 1")
    _require(args.k >= 1, "--k must be >= 1")
    _require(args.exhaustive or args.j >= 2, "--j must be >= 2")
    if args.chunked:
        _require(args.chunk_len is not None, "--chunked requires --chunk-len")
        _require(args.hop is not None, "--chunked requires --hop")
        _require(
            args.dump_laplacian is None,
            "--dump-laplacian applies to unchunked runs only",
        )
        _require(not args.exhaustive, "--exhaustive applies to unchunked runs only")

    timer = _StageTimer()
    obs = timer.run("load", lambda: io.read_observations_csv(args.observations))
    _require(args.k <= obs.n, f"--k must be <= N = {obs.n}")
    _require(args.m < obs.n, f"--m must be < N = {obs.n}")

    if args.chunked:
        try:
            plan = ChunkPlan(chunk_len=args.chunk_len, hop=args.hop, n_samples=obs.length)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        estimate = timer.run(
            "chunked_estimate",
            lambda: estimate_template_chunked(
                obs, plan, m=args.m, j=args.j, k=args.k, rng_seed=args.seed
            ),
        )
        scores = ranking = None
    else:
        lap = timer.run(
            "build_laplacian", lambda: build_laplacian(obs, GraphBuildParams(m=args.m))
        )
        if args.dump_laplacian is not None:
            io.write_laplacian_coo(args.dump_laplacian, lap.matrix)
        if not timer.run("connectivity", lambda: is_connected(lap)):
            raise DisconnectedGraphError(
                f"affinity graph with m={args.m} neighbors is disconnected; increase --m"
            )
        scores = timer.run(
            "centrality",
            lambda: centrality_scores(
                lap, trials=args.j, rng_seed=args.seed, exhaustive=args.exhaustive
            ),
        )
        ranking = rank_by_centrality(scores)
        estimate = timer.run("average", lambda: central_average(obs, ranking, args.k))

    io.write_signal_csv(args.estimate_out, estimate)
    outputs = {"estimate": str(Path(args.estimate_out).resolve())}
    if scores is not None:
        io.write_scores_csv(args.scores_out, scores, ranking)
        outputs["scores"] = str(Path(args.scores_out).resolve())

    run_record = {
        "record": "run",
        "subcommand": "estimate",
        "seed": args.seed,
        "params": {
            "m": args.m,
            "j": args.j,
            "k": args.k,
            "exhaustive": args.exhaustive,
            "chunked": args.chunked,
            "chunk_len": args.chunk_len,
            "hop": args.hop,
            "threads": _resolve_threads(args.threads),
        },
        "inputs": {"observations": str(Path(args.observations).resolve())},
        "outputs": outputs,
    }
    io.write_manifest(args.manifest_out, [run_record] + timer.records)

    trials = scores.trials if scores is not None else args.j
    print(f"estimate: {args.estimate_out} ({len(estimate)} samples)")
    if scores is not None:
        print(f"scores: {args.scores_out} ({trials} trials)")
    print(f"manifest: {args.manifest_out}")
    return EXIT_OK


def cmd_blur_oracle(args: argparse.Namespace) -> int:
    _require(args.variance > 0, "--variance must be > 0")
    truth = io.read_signal_csv(args.truth)
    blurred = gaussian_blur_oracle(truth, args.variance)
    io.write_signal_csv(args.out, blurred)
    print(f"wrote {args.out} ({len(blurred)} samples)")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    """Re-execute an estimate run from its manifest and diff the outputs."""
    records = io.read_manifest(args.manifest)
    if not records or records[0].get("record") != "run":
        raise UsageError(f"{args.manifest}: first manifest line is not a run record")
    run = records[0]
    if run.get("subcommand") != "estimate":
        raise UsageError(f"replay supports 'estimate' manifests, got {run.get('subcommand')!r}")

    params = run["params"]
    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        argv = [
            "estimate",
            run["inputs"]["observations"],
            "--m", str(params["m"]),
            "--j", str(params["j"]),
            "--k", str(params["k"]),
            "--seed", str(run["seed"]),
            "--estimate-out", str(tmp_path / "estimate.csv"),
            "--scores-out", str(tmp_path / "scores.csv"),
            "--manifest-out", str(tmp_path / "manifest.jsonl"),
        ]
        if params.get("exhaustive"):
            argv.append("--exhaustive")
        if params.get("chunked"):
            argv += [
                "--chunked",
                "--chunk-len", str(params["chunk_len"]),
                "--hop", str(params["hop"]),
            ]
        code = main(argv)
        if code != EXIT_OK:
            print(f"replay run failed with exit code {code}")
            return EXIT_OTHER

        identical = True
        replayed = {
            "estimate": tmp_path / "estimate.csv",
            "scores": tmp_path / "scores.csv",
        }
        for name, original in run["outputs"].items():
            new_bytes = replayed[name].read_bytes()
            old_bytes = Path(original).read_bytes()
            status = "identical" if new_bytes == old_bytes else "DIFFERS"
            identical &= new_bytes == old_bytes
            print(f"{name}: {status}")
    return EXIT_OK if identical else EXIT_OTHER


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="warpmedian",
        description="Estimate a prototype signal from many time-warped observations",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="cap on numeric worker threads (default: all cores, or "
        f"${THREADS_ENV_VAR}); outputs do not depend on it",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate warped noisy observations of a test signal")
    p.add_argument("--n", type=int, default=1000, help="number of observations")
    p.add_argument("--alpha", type=float, default=4e-4, help="warp variance (s^2)")
    p.add_argument("--sigma", type=float, default=0.1, help="warp correlation length (s)")
    p.add_argument("--noise-std", type=float, default=0.01, help="additive noise level")
    p.add_argument("--seed", type=int, default=0, help="master RNG seed")
    p.add_argument("--samples", type=int, default=401, help="built-in truth grid length")
    p.add_argument("--truth", default=None, help="use this signal CSV as ground truth")
    p.add_argument("--truth-out", default="truth.csv")
    p.add_argument("--obs-out", default="observations.csv")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("segment", help="cut a long record into peak-aligned excerpts")
    p.add_argument("record", help="single-column signal CSV with grid header")
    p.add_argument("--pre", type=float, default=0.1, help="seconds before each peak")
    p.add_argument("--post", type=float, default=1.0, help="seconds after each peak")
    p.add_argument("--min-distance", type=float, default=0.3, help="minimum peak spacing (s)")
    p.add_argument("--threshold", type=float, default=0.6, help="peak height threshold")
    p.add_argument(
        "--threshold-mode",
        choices=["absolute", "quantile"],
        default="quantile",
        help="interpret --threshold as amplitude or as a quantile factor",
    )
    p.add_argument("--quantile", type=float, default=0.99, help="reference quantile")
    p.add_argument("--obs-out", default="observations.csv")
    p.add_argument("--peaks-out", default="peaks.csv")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("estimate", help="estimate the template from an observation set")
    p.add_argument("observations", help="observation-set CSV")
    p.add_argument("--m", type=int, default=10, help="neighbors per node")
    p.add_argument("--j", type=int, default=1000, help="centrality trials")
    p.add_argument("--k", type=int, default=5, help="observations averaged")
    p.add_argument("--seed", type=int, default=0, help="master RNG seed")
    p.add_argument("--exhaustive", action="store_true", help="visit all seed pairs")
    p.add_argument("--chunked", action="store_true", help="piecewise estimation")
    p.add_argument("--chunk-len", type=int, default=None, help="chunk length (samples)")
    p.add_argument("--hop", type=int, default=None, help="chunk hop (samples)")
    p.add_argument("--estimate-out", default="estimate.csv")
    p.add_argument("--scores-out", default="scores.csv")
    p.add_argument("--manifest-out", default="manifest.jsonl")
    p.add_argument("--dump-laplacian", default=None, help="write the Laplacian as row,col,value")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("blur-oracle", help="convolve a truth signal with a normal pdf")
    p.add_argument("truth", help="signal CSV")
    p.add_argument("--variance", type=float, required=True, help="blur variance (s^2)")
    p.add_argument("--out", default="blurred.csv")
    p.set_defaults(func=cmd_blur_oracle)

    p = sub.add_parser("replay", help="re-run an estimate manifest and diff outputs")
    p.add_argument("manifest", help="manifest.jsonl from a previous estimate run")
    p.set_defaults(func=cmd_replay)

    return parser


def _pin_numeric_threads():
    """Pin BLAS/LAPACK pools to one thread for cross-run byte-identity."""
    try:
        from threadpoolctl import threadpool_limits

        return threadpool_limits(limits=1)
    except ImportError:  # pragma: no cover
        import contextlib

        return contextlib.nullcontext()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        threads = _resolve_threads(args.threads)
        _require(threads >= 1, "--threads must be >= 1")
        with _pin_numeric_threads():
            return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SegmentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_EXCERPTS
    except DuplicateObservationsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DUPLICATES
    except (DisconnectedGraphError, IsolatedNodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except (WarpMedianError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    raise SystemExit(main())
