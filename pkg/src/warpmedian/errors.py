"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes, so raise the most specific
class available.
"""


class WarpMedianError(Exception):
    """Base class for all package-specific failures."""


class CovarianceFactorizationError(WarpMedianError):
    """Warp covariance matrix stayed numerically indefinite after max jitter."""


class GraphConstructionError(WarpMedianError):
    """Laplacian assembly failed."""


class DuplicateObservationsError(GraphConstructionError):
    """Bandwidth collapsed to zero: too many duplicated observations."""


class IsolatedNodeError(GraphConstructionError):
    """A node lost all of its edges during sparsification."""

    def __init__(self, node: int):
        self.node = node
        super().__init__(
            f"node {node} has no remaining neighbors after sparsification; "
            "increase the neighbor count m or deduplicate observations"
        )


class DisconnectedGraphError(WarpMedianError):
    """Affinity graph has more than one component; increase the neighbor count m."""


class SolverError(WarpMedianError):
    """Linear solve failed or did not reach the requested residual."""


class SegmentationError(WarpMedianError):
    """Record segmentation produced no usable excerpts."""
