"""Randomized edge sampling and Laplacian sparsification.

Edges are drawn i.i.d. with replacement from a probability vector that is
(or dominates a fraction of) the normalized leverage scores. Each drawn edge
contributes its rank-1 Laplacian term rescaled by 1/(r p_i), so the sparsifier
is an unbiased estimator of the full Laplacian. Repeated draws of the same
edge accumulate into a single reweighted edge; the r-column sampling operator
is never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sparse

from .errors import ParameterError
from .graphs import IncidenceFactors

_PROB_SUM_TOL = 1e-12
_SEED_MAX = 2**64


@dataclass(frozen=True)
class SamplingPlan:
    """Everything needed to reproduce one sparsification run.

    probabilities   per-edge sampling distribution, sums to one
    beta            leverage-floor fraction the distribution is assumed to meet
    epsilon         target relative accuracy of the downstream solve
    c0              oversampling constant in the sample-count rule
    r               number of i.i.d. draws
    seed            64-bit RNG seed; fixes the draw sequence exactly
    """

    probabilities: np.ndarray
    beta: float
    epsilon: float
    c0: float
    r: int
    seed: int

    def __post_init__(self) -> None:
        p = np.asarray(self.probabilities, dtype=float).copy()
        if p.ndim != 1 or p.size == 0:
            raise ParameterError("probabilities must be a non-empty 1-D vector")
        if not np.all(np.isfinite(p)) or np.any(p < 0.0):
            raise ParameterError("probabilities must be finite and non-negative")
        if abs(p.sum() - 1.0) > _PROB_SUM_TOL:
            raise ParameterError(f"probabilities sum to {float(p.sum())!r}, not 1")
        if not 0.0 < self.beta <= 1.0:
            raise ParameterError(f"beta must be in (0, 1], got {self.beta}")
        if not 0.0 < self.epsilon < 1.0:
            raise ParameterError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not self.c0 > 0.0:
            raise ParameterError(f"c0 must be positive, got {self.c0}")
        if not isinstance(self.r, (int, np.integer)) or self.r < 1:
            raise ParameterError(f"sample count must be a positive integer, got {self.r!r}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < _SEED_MAX:
            raise ParameterError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def m(self) -> int:
        return int(self.probabilities.size)


@dataclass(frozen=True)
class SparsifiedSystem:
    """A sampled, rescaled Laplacian together with how it was assembled.

    samples     the r drawn edge indices, in draw order
    laplacian   n x n sparse symmetric matrix built from the draws
    aggregated  edge index -> accumulated rescaled weight w_i count_i / (r p_i)
    nnz         stored nonzeros of ``laplacian``; at most n + 2 r
    """

    samples: np.ndarray
    laplacian: sparse.csr_matrix
    aggregated: dict[int, float]
    nnz: int

    @property
    def n(self) -> int:
        return int(self.laplacian.shape[0])

    @property
    def distinct_edges(self) -> int:
        return len(self.aggregated)


def sample_count(n: int, epsilon: float, beta: float = 1.0, c0: float = 1.0) -> int:
    """Number of draws required for the accuracy guarantee.

    Evaluates ceil(2 x ln x) with x = 36 c0^2 n / (beta epsilon). The rule is
    deliberately not capped at the edge count: sampling with replacement past
    m keeps the guarantee, and at small n the count routinely exceeds m.
    """
    if n < 1:
        raise ParameterError(f"vertex count must be positive, got {n}")
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must be in (0, 1), got {epsilon}")
    if not 0.0 < beta <= 1.0:
        raise ParameterError(f"beta must be in (0, 1], got {beta}")
    if not c0 > 0.0:
        raise ParameterError(f"c0 must be positive, got {c0}")
    x = 36.0 * c0 * c0 * n / (beta * epsilon)
    if x <= 1.0:
        raise ParameterError(
            f"sample-count rule needs 36 c0^2 n / (beta epsilon) > 1, got {x!r}"
        )
    return math.ceil(2.0 * x * math.log(x))


def _last_positive_index(p: np.ndarray) -> int:
    return int(np.flatnonzero(p > 0.0)[-1])


def draw_samples(plan: SamplingPlan) -> np.ndarray:
    """Draw plan.r i.i.d. edge indices from plan.probabilities.

    Inverse-CDF over the cumulative vector with binary search, seeded by
    plan.seed, so the sequence is identical across runs and platforms.
    """
    rng = np.random.default_rng(plan.seed)
    uniforms = rng.random(plan.r)
    cdf = np.cumsum(plan.probabilities)
    idx = np.searchsorted(cdf, uniforms, side="right")
    # cumulative rounding can leave cdf[-1] a hair below 1; those draws
    # belong to the final edge that has any mass
    overflow = idx >= plan.m
    if np.any(overflow):
        idx[overflow] = _last_positive_index(plan.probabilities)
    idx = idx.astype(np.int64)
    idx.setflags(write=False)
    return idx


def build_sparsifier(factors: IncidenceFactors, plan: SamplingPlan) -> SparsifiedSystem:
    """Assemble the sampled Laplacian by accumulating rescaled edge terms.

    Each draw of edge i contributes w_i b_i b_i^T / (r p_i); draws of the
    same edge merge into one edge of weight w_i count_i / (r p_i).
    """
    if plan.m != factors.m:
        raise ParameterError(
            f"plan covers {plan.m} edges but the graph has {factors.m}"
        )
    samples = draw_samples(plan)
    counts = np.bincount(samples, minlength=factors.m)
    hit = np.flatnonzero(counts)
    if np.any(plan.probabilities[hit] == 0.0):
        raise RuntimeError("drew an edge with zero probability")
    scale = counts[hit] / (plan.r * plan.probabilities[hit])
    weights = factors.weights[hit] * scale
    lo = factors.lo[hit]
    hi = factors.hi[hit]
    n = factors.n
    rows = np.concatenate([lo, hi, lo, hi])
    cols = np.concatenate([lo, hi, hi, lo])
    vals = np.concatenate([weights, weights, -weights, -weights])
    lap = sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    lap.sum_duplicates()
    aggregated = {int(i): float(w) for i, w in zip(hit, weights)}
    return SparsifiedSystem(
        samples=samples,
        laplacian=lap,
        aggregated=aggregated,
        nnz=int(lap.nnz),
    )


def concentration_check(
    basis: np.ndarray,
    plan: SamplingPlan,
    samples: np.ndarray | None = None,
) -> float:
    """Spectral-norm deviation of the sampled basis Gram matrix from identity.

    Draws the plan's edges (or reuses ``samples`` when the caller already
    drew them) and returns ||U^T D U - I||_2 where D holds count_i / (r p_i)
    on the diagonal. This equals the largest |sigma^2 - 1| over the singular
    values of the sampled, rescaled basis rows, which is the quantity the
    sparsification guarantee controls.
    """
    if basis.ndim != 2 or basis.shape[0] != plan.m:
        raise ParameterError(
            f"basis must be {plan.m} x rank, got shape {getattr(basis, 'shape', None)}"
        )
    if samples is None:
        samples = draw_samples(plan)
    counts = np.bincount(samples, minlength=plan.m)
    hit = np.flatnonzero(counts)
    scale = counts[hit] / (plan.r * plan.probabilities[hit])
    rows = basis[hit]
    gram = rows.T @ (rows * scale[:, None])
    gram = 0.5 * (gram + gram.T)
    eigs = np.linalg.eigvalsh(gram)
    return float(np.max(np.abs(eigs - 1.0)))
