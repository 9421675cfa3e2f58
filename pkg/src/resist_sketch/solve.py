"""Minimal-norm Laplacian solves and energy-norm error reports.

Both the exact and the sparsified problem are solved through the
pseudoinverse, so components of the right-hand side in the null space
(constants, per connected component) are discarded rather than amplified.
Solution quality is judged in the energy quadratic form x^T L x of the
original Laplacian, the squared quantity the sparsification guarantee
bounds. No square root is taken anywhere; tests compare like with like.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sparse

from .errors import FactorizationError, ParameterError
from .graphs import IncidenceFactors
from .spectral import SpectralProfile, _svd_rank

#: below this, the reference energy counts as zero and the ratio is undefined
_NULL_ENERGY_FLOOR = 1e-18
#: absolute energy-error bar that stands in for the ratio test in that case
_NULL_ENERGY_SUCCESS = 1e-12


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one pseudoinverse solve, optionally scored against an exact one.

    x                   minimal 2-norm least-squares solution
    residual_two_norm   ||A x - b||_2 for the matrix actually solved
    null_component      |sum(x)|; near zero for connected graphs
    rank                numerical rank the pseudoinverse was taken at
    energy_error        (x_exact - x)^T L (x_exact - x), filled by error_report
    relative_energy_error  energy_error / (x_exact^T L x_exact); None when the
                        reference energy is zero
    success             relative error within the target, or the absolute
                        fallback when the ratio is undefined
    """

    x: np.ndarray
    residual_two_norm: float
    null_component: float
    rank: int
    energy_error: float | None = None
    relative_energy_error: float | None = None
    success: bool | None = None


def _as_dense(matrix) -> np.ndarray:
    if sparse.issparse(matrix):
        return matrix.toarray()
    return np.asarray(matrix, dtype=float)


def _check_rhs(matrix, b: np.ndarray) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    n = matrix.shape[0]
    if b.shape != (n,):
        raise ParameterError(f"right-hand side has shape {b.shape}, expected ({n},)")
    if not np.all(np.isfinite(b)):
        raise ParameterError("right-hand side must be finite")
    return b


def _pinv_apply(matrix, b: np.ndarray) -> tuple[np.ndarray, int]:
    """Minimal-norm least-squares solution via a fresh SVD of the matrix."""
    dense = _as_dense(matrix)
    try:
        u, s, vt = scipy.linalg.svd(dense, full_matrices=False)
    except scipy.linalg.LinAlgError as exc:
        raise FactorizationError(
            f"SVD of the {dense.shape[0]}x{dense.shape[1]} system matrix failed",
            condition_estimate=float("inf"),
        ) from exc
    rank = _svd_rank(s, dense.shape)
    coeffs = (u[:, :rank].T @ b) / s[:rank]
    return vt[:rank].T @ coeffs, rank


def _finish(matrix, b: np.ndarray, x: np.ndarray, rank: int) -> SolveReport:
    residual = matrix @ x - b
    return SolveReport(
        x=x,
        residual_two_norm=float(np.linalg.norm(residual)),
        null_component=float(abs(x.sum())),
        rank=rank,
    )


def solve_exact(L, b: np.ndarray, profile: SpectralProfile | None = None) -> SolveReport:
    """Minimal 2-norm solution of the full Laplacian system.

    With a spectral profile the pseudoinverse is applied through the stored
    right factor and singular values of the scaled incidence matrix (whose
    squares are the Laplacian's nonzero eigenvalues); otherwise the Laplacian
    is factorized directly.
    """
    b = _check_rhs(L, b)
    if profile is not None:
        if profile.right_factor.shape[0] != L.shape[0]:
            raise ParameterError(
                f"profile is for {profile.right_factor.shape[0]} vertices, "
                f"matrix has {L.shape[0]}"
            )
        v = profile.right_factor
        x = v @ ((v.T @ b) / profile.singular_values**2)
        return _finish(L, b, x, profile.rank)
    x, rank = _pinv_apply(L, b)
    return _finish(L, b, x, rank)


def solve_sparsified(system, b: np.ndarray) -> SolveReport:
    """Minimal 2-norm solution of a sampled Laplacian system.

    The pseudoinverse is taken at the sampled matrix's own detected rank,
    which can fall short of the original's when too few edges were drawn;
    the report's rank field makes that visible.
    """
    b = _check_rhs(system.laplacian, b)
    x, rank = _pinv_apply(system.laplacian, b)
    return _finish(system.laplacian, b, x, rank)


def energy_norm(operator, x: np.ndarray) -> float:
    """The quadratic form x^T L x (a squared quantity, by convention).

    Pass IncidenceFactors to evaluate it as the squared weighted flow norm
    sum_i w_i (Bx)_i^2, which cannot go negative in floating point; pass a
    matrix to evaluate the quadratic form directly.
    """
    x = np.asarray(x, dtype=float)
    if isinstance(operator, IncidenceFactors):
        flow = operator.incidence @ x
        return float(np.dot(operator.weights, flow * flow))
    return float(np.dot(x, operator @ x))


def error_report(exact: SolveReport, sparsified: SolveReport, L, epsilon: float) -> SolveReport:
    """Score a sparsified solve against the exact one in the energy norm.

    When the reference energy is zero (right-hand side entirely in the null
    space) the ratio is undefined and reported as None; the run then counts
    as a success only if the absolute energy error is negligible.
    """
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must be in (0, 1), got {epsilon}")
    if exact.x.shape != sparsified.x.shape:
        raise ParameterError(
            f"solutions have shapes {exact.x.shape} and {sparsified.x.shape}"
        )
    energy_error = energy_norm(L, exact.x - sparsified.x)
    reference = energy_norm(L, exact.x)
    floor = _NULL_ENERGY_FLOOR * max(1.0, float(np.dot(exact.x, exact.x)))
    if reference <= floor:
        return dataclasses.replace(
            sparsified,
            energy_error=energy_error,
            relative_energy_error=None,
            success=bool(energy_error <= _NULL_ENERGY_SUCCESS),
        )
    relative = energy_error / reference
    return dataclasses.replace(
        sparsified,
        energy_error=energy_error,
        relative_energy_error=relative,
        success=bool(relative <= epsilon),
    )
