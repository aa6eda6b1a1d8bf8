"""Sparse affinity Laplacian over an observation set.

Construction recipe (applied literally, in this order):

1. squared Euclidean distances ``d_ij`` between observation vectors;
2. per-node scale ``tau_i`` = m-th smallest distance to another node;
3. global bandwidth ``eps = median(tau_i) / 3``;
4. off-diagonals ``L_ij = -exp(-d_ij / eps)``;
5. symmetric sparsification: the unordered pair {i, j} (j < i) is zeroed
   when ``d_ij > tau_i`` -- only the larger index's scale is consulted, so a
   node can end up keeping more than m neighbors;
6. density normalization ``L_ij <- L_ij / (d_i d_j)`` with ``d_i`` the i-th
   row sum of off-diagonals (a product of two negatives, so signs survive);
7. diagonals set to minus the off-diagonal column sums, forcing zero row sums.

The result is symmetric with non-positive off-diagonals and zero row sums.
Node scores downstream compare temperatures across this graph, so exact
symmetry is enforced structurally (both triangles share one value per pair).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import cdist

from .errors import DuplicateObservationsError, IsolatedNodeError
from .signal_model import ObservationSet

# Row-sum defect allowed relative to the diagonal magnitude.
ROW_SUM_RTOL = 1e-12


@dataclass(frozen=True)
class GraphBuildParams:
    """Neighbor count m (>= 1) and optional bandwidth override."""

    m: int
    epsilon_override: float | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.epsilon_override is not None and not self.epsilon_override > 0:
            raise ValueError("epsilon_override must be positive")


@dataclass(frozen=True)
class SparseLaplacian:
    """Symmetric graph Laplacian: off-diagonals <= 0, zero row sums."""

    matrix: sp.csr_array

    def __post_init__(self):
        m = self.matrix
        if not sp.issparse(m):
            raise ValueError("matrix must be a scipy sparse array")
        if m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        object.__setattr__(self, "matrix", sp.csr_array(m))

    @classmethod
    def from_dense(cls, dense: np.ndarray, validate: bool = True) -> "SparseLaplacian":
        lap = cls(sp.csr_array(np.asarray(dense, dtype=float)))
        if validate:
            lap.validate()
        return lap

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def validate(self) -> None:
        """Check symmetry, row sums, and sign pattern; raise on violation."""
        m = self.matrix
        asym = m - m.T
        if asym.nnz and np.any(asym.data != 0.0):
            raise ValueError("Laplacian is not exactly symmetric")
        diag = m.diagonal()
        if np.any(diag < 0):
            raise ValueError("Laplacian has a negative diagonal entry")
        off = m - sp.diags_array(diag)
        if off.nnz and off.data.max() > 0:
            raise ValueError("Laplacian has a positive off-diagonal entry")
        row_sums = np.asarray(m.sum(axis=1)).ravel()
        scale = max(diag.max(initial=0.0), 1e-300)
        if np.abs(row_sums).max() > ROW_SUM_RTOL * scale:
            raise ValueError("Laplacian row sums are not zero")

    def offdiag_pattern(self) -> sp.csr_array:
        """Adjacency pattern of the nonzero off-diagonal entries."""
        m = self.matrix.copy()
        m.setdiag(0.0)
        m.eliminate_zeros()
        return m


def pairwise_sq_distances(obs: ObservationSet) -> np.ndarray:
    """Dense matrix of squared Euclidean distances between observations."""
    if obs.n < 2:
        raise ValueError("need at least two observations")
    d = cdist(obs.data, obs.data, metric="sqeuclidean")
    np.fill_diagonal(d, 0.0)
    return d


def build_laplacian(obs: ObservationSet, params: GraphBuildParams) -> SparseLaplacian:
    """Assemble the kNN affinity Laplacian for an observation set."""
    n = obs.n
    if n < params.m + 1:
        raise ValueError(f"need at least m+1 = {params.m + 1} observations, got {n}")

    d = pairwise_sq_distances(obs)

    # tau_i: m-th smallest distance to a *different* node (self excluded).
    offdiag = d[~np.eye(n, dtype=bool)].reshape(n, n - 1)
    tau = np.partition(offdiag, params.m - 1, axis=1)[:, params.m - 1]

    if params.epsilon_override is not None:
        eps = params.epsilon_override
    else:
        eps = float(np.median(tau)) / 3.0
        if eps == 0.0:
            raise DuplicateObservationsError(
                "bandwidth is zero: more than half the nodes sit on duplicated "
                "observations; deduplicate the input"
            )

    w = -np.exp(-d / eps)
    np.fill_diagonal(w, 0.0)

    # Sparsify per unordered pair {i, j}, j < i, consulting tau of the larger
    # index; zero both triangles to keep symmetry.
    il, jl = np.tril_indices(n, k=-1)
    drop = d[il, jl] > tau[il]
    w[il[drop], jl[drop]] = 0.0
    w[jl[drop], il[drop]] = 0.0

    deg = w.sum(axis=1)  # sums of negative entries, one per node
    isolated = np.where(deg == 0.0)[0]
    if isolated.size:
        raise IsolatedNodeError(int(isolated[0]))

    w /= np.outer(deg, deg)
    np.fill_diagonal(w, 0.0)
    diag = -w.sum(axis=0)
    np.fill_diagonal(w, diag)

    return SparseLaplacian(sp.csr_array(w))


def is_connected(lap: SparseLaplacian) -> bool:
    """True iff the nonzero off-diagonal pattern forms a single component.

    Uses graph traversal; equivalent to the Laplacian having a
    one-dimensional null space, but linear-time.
    """
    pattern = lap.offdiag_pattern()
    n_components, _ = connected_components(pattern, directed=False)
    return n_components == 1
