"""Estimate a prototype signal from many time-warped, noisy observations.

Instead of de-warping anything, each observation becomes a node of a sparse
affinity graph; randomized discrete Dirichlet problems score how "central"
every node is, and the most central observations are averaged into the
template estimate.  The cost scales with the number of observations through
sparse symmetric solves, not with pairwise alignment.
"""

from .centrality import (
    CentralityScores,
    DirichletSolution,
    central_average,
    centrality_scores,
    estimate_template,
    rank_by_centrality,
    solve_dirichlet,
)
from .chunking import ChunkPlan, dissect, estimate_template_chunked, overlap_add
from .errors import (
    CovarianceFactorizationError,
    DisconnectedGraphError,
    DuplicateObservationsError,
    GraphConstructionError,
    IsolatedNodeError,
    SegmentationError,
    SolverError,
    WarpMedianError,
)
from .graph import (
    GraphBuildParams,
    SparseLaplacian,
    build_laplacian,
    is_connected,
    pairwise_sq_distances,
)
from .segmentation import (
    SegmentationParams,
    detect_peaks,
    extract_excerpts,
    peak_to_peak_distances,
)
from .signal_model import (
    ObservationSet,
    Signal,
    WarpField,
    WarpKernelParams,
    apply_warp,
    ensemble_average,
    gaussian_blur_oracle,
    generate_observations,
    sample_warp_field,
)

__version__ = "0.1.0"

__all__ = [
    "CentralityScores",
    "ChunkPlan",
    "CovarianceFactorizationError",
    "DirichletSolution",
    "DisconnectedGraphError",
    "DuplicateObservationsError",
    "GraphBuildParams",
    "GraphConstructionError",
    "IsolatedNodeError",
    "ObservationSet",
    "SegmentationError",
    "SegmentationParams",
    "Signal",
    "SolverError",
    "SparseLaplacian",
    "WarpField",
    "WarpKernelParams",
    "WarpMedianError",
    "apply_warp",
    "build_laplacian",
    "central_average",
    "centrality_scores",
    "detect_peaks",
    "dissect",
    "ensemble_average",
    "estimate_template",
    "estimate_template_chunked",
    "extract_excerpts",
    "gaussian_blur_oracle",
    "generate_observations",
    "is_connected",
    "overlap_add",
    "pairwise_sq_distances",
    "peak_to_peak_distances",
    "rank_by_centrality",
    "sample_warp_field",
    "solve_dirichlet",
]
