"""Weighted undirected graphs and the incidence factorization of their Laplacians.

A graph is a vertex count plus an ordered list of positively weighted edges;
the edge index is meaningful and preserved by everything derived from it.
The Laplacian is available two ways, which must agree: directly from weighted
degrees, and as the product of the signed incidence matrix with itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with ``n`` vertices and positively weighted edges.

    Edges are stored in construction order, exactly as given (endpoint order
    included); parallel edges are permitted and kept distinct. Instances are
    immutable and safe to share.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"vertex count must be >= 2, got {self.n}")
        object.__setattr__(
            self, "edges", tuple((int(u), int(v), float(w)) for u, v, w in self.edges)
        )
        for i, (u, v, w) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {i}: endpoint out of range for n={self.n}: ({u}, {v})")
            if u == v:
                raise ValueError(f"edge {i}: self-loop at vertex {u}")
            if not (math.isfinite(w) and w > 0.0):
                raise ValueError(f"edge {i}: weight must be finite and positive, got {w}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges], dtype=float)


@dataclass(frozen=True)
class IncidenceFactors:
    """Signed incidence matrix and edge weights of a graph.

    ``incidence`` is m x n with two nonzeros per row: +1 at the smaller
    endpoint (``lo``), -1 at the larger (``hi``). ``weights`` is the length-m
    vector of edge weights. The weight-scaled incidence matrix, whose Gram
    matrix is the Laplacian, is produced on demand.
    """

    incidence: sparse.csr_matrix
    weights: np.ndarray
    lo: np.ndarray
    hi: np.ndarray

    @property
    def m(self) -> int:
        return self.incidence.shape[0]

    @property
    def n(self) -> int:
        return self.incidence.shape[1]

    def scaled_incidence(self) -> sparse.csr_matrix:
        """Incidence matrix with row i multiplied by sqrt(weight_i)."""
        root = sparse.diags(np.sqrt(self.weights))
        return (root @ self.incidence).tocsr()


def incidence_factors(g: WeightedGraph) -> IncidenceFactors:
    """Build the incidence factorization of ``g``.

    Row i of the incidence matrix has +1 at min(u_i, v_i) and -1 at
    max(u_i, v_i); the orientation is arbitrary mathematically, fixed here so
    outputs are deterministic.
    """
    m = g.m
    u = np.array([e[0] for e in g.edges], dtype=np.int64)
    v = np.array([e[1] for e in g.edges], dtype=np.int64)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    rows = np.repeat(np.arange(m, dtype=np.int64), 2)
    cols = np.column_stack([lo, hi]).ravel()
    data = np.tile(np.array([1.0, -1.0]), m)
    b = sparse.coo_matrix((data, (rows, cols)), shape=(m, g.n)).tocsr()
    weights = g.weights()
    weights.setflags(write=False)
    lo.setflags(write=False)
    hi.setflags(write=False)
    return IncidenceFactors(incidence=b, weights=weights, lo=lo, hi=hi)


def laplacian_of(g: WeightedGraph) -> sparse.csr_matrix:
    """Laplacian of ``g`` as a sparse symmetric PSD matrix.

    Off-diagonal (i, j) entries are minus the total weight between i and j
    (parallel edges sum); diagonal entries are the weighted degrees. Row sums
    are zero, so the all-ones vector is in the null space. Endpoints are
    ordered before assembly so the (i, j) and (j, i) buckets accumulate in
    the same order and the result is symmetric exactly, not just within
    round-off.
    """
    u = np.array([min(e[0], e[1]) for e in g.edges], dtype=np.int64)
    v = np.array([max(e[0], e[1]) for e in g.edges], dtype=np.int64)
    w = g.weights()
    rows = np.concatenate([u, v, u, v])
    cols = np.concatenate([u, v, v, u])
    data = np.concatenate([w, w, -w, -w])
    lap = sparse.coo_matrix((data, (rows, cols)), shape=(g.n, g.n)).tocsr()
    lap.sum_duplicates()
    return lap


def component_count(g: WeightedGraph) -> int:
    """Number of connected components (isolated vertices count)."""
    adj = laplacian_of(g)
    count, _ = csgraph.connected_components(adj, directed=False)
    return int(count)
