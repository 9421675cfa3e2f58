"""Experiment harness: configured pipelines and Monte Carlo verification.

Each command takes a RunConfig, runs one pipeline (score, sparsify, solve,
or a repeated-trial verification), and returns a JSON-ready payload. All
randomness flows from the config seed: the right-hand side uses sub-stream 0,
trial t uses sub-stream 1 + t, so reports are reproducible bit for bit and
trials are independent of each other and of the right-hand side.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import io
from .errors import ParameterError
from .graphs import IncidenceFactors, WeightedGraph, incidence_factors, laplacian_of
from .sampling import (
    SamplingPlan,
    build_sparsifier,
    concentration_check,
    sample_count,
)
from .solve import error_report, solve_exact, solve_sparsified
from .spectral import (
    SpectralProfile,
    effective_resistances,
    leverage_probabilities,
    spectral_profile,
)
from .version import VERSION

MODES = ("leverage", "resistance", "sparsify", "solve", "verify")

_SEED_MAX = 2**64


@dataclass(frozen=True)
class RunConfig:
    """One fully specified run; every field lands in the report verbatim."""

    graph_path: str
    mode: str
    b_path: str | None = None
    epsilon: float = 0.5
    beta: float = 1.0
    c0: float = 1.0
    seed: int = 0
    trials: int = 100
    r_override: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0.0 < self.epsilon < 1.0:
            raise ParameterError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not 0.0 < self.beta <= 1.0:
            raise ParameterError(f"beta must be in (0, 1], got {self.beta}")
        if not self.c0 > 0.0:
            raise ParameterError(f"c0 must be positive, got {self.c0}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < _SEED_MAX:
            raise ParameterError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ParameterError(f"trials must be a positive integer, got {self.trials!r}")
        if self.r_override is not None and (
            not isinstance(self.r_override, int) or self.r_override < 1
        ):
            raise ParameterError(
                f"r override must be a positive integer, got {self.r_override!r}"
            )


@dataclass(frozen=True)
class VerifyReport:
    """Aggregate of a Monte Carlo verification run.

    success counts/rates score the relative energy error of each trial's
    sparsified solve against epsilon; the concentration fields score how far
    each trial's sampled basis Gram matrix strayed from the identity, whose
    guarantee level is sqrt(epsilon)/2 per trial and sqrt(epsilon)/6 in the
    mean. lemma_max_relerr is the worst relative disagreement between the
    two independent resistance computations on this graph, a per-graph
    cross-check that does not vary with the trials.
    """

    trials: int
    success_count: int
    success_rate: float
    epsilon: float
    beta: float
    c0: float
    r: int
    off_theorem: bool
    rank: int
    concentration_bound: float
    concentration_pass_count: int
    concentration_pass_rate: float
    mean_concentration_deviation: float
    concentration_std_error: float
    mean_deviation_target: float
    oversampling_condition: dict[str, Any]
    max_sv_deviation_quantiles: dict[str, float]
    lemma_max_relerr: float
    records: tuple[dict[str, Any], ...]


def trial_seed(seed: int, trial: int) -> int:
    """Derived 64-bit seed for one trial; sub-stream 0 is the right-hand side."""
    ss = np.random.SeedSequence((seed, 1 + trial))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def default_rhs(n: int, seed: int) -> np.ndarray:
    """Zero-sum standard-normal right-hand side derived from the config seed."""
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0)))
    b = rng.standard_normal(n)
    return b - b.mean()


def _load_rhs(cfg: RunConfig, n: int) -> np.ndarray:
    if cfg.b_path is None:
        return default_rhs(n, cfg.seed)
    b = io.load_vector(cfg.b_path)
    if b.shape != (n,):
        raise ParameterError(
            f"right-hand side has {b.size} entries but the graph has {n} vertices"
        )
    return b


def _lemma_max_relerr(g: WeightedGraph, profile: SpectralProfile) -> float:
    """Worst relative gap between leverage/weight and the pseudoinverse-path resistance."""
    dense_route = effective_resistances(g)
    gap = np.abs(profile.leverage - g.weights() * dense_route)
    return float(np.max(gap / np.maximum(profile.leverage, 1e-300)))


def _plan_for(
    cfg: RunConfig, profile: SpectralProfile, n: int, seed: int
) -> tuple[SamplingPlan, str]:
    p = leverage_probabilities(profile, beta=cfg.beta)
    if cfg.r_override is not None:
        r, source = cfg.r_override, "override"
    else:
        r, source = sample_count(n, cfg.epsilon, cfg.beta, cfg.c0), "rule"
    plan = SamplingPlan(
        probabilities=p, beta=cfg.beta, epsilon=cfg.epsilon, c0=cfg.c0, r=r, seed=seed
    )
    return plan, source


def _oversampling_condition(cfg: RunConfig, rank: int) -> dict[str, Any]:
    # Mean-deviation guarantee precondition at the specialized accuracy
    # sqrt(epsilon)/6; holds whenever the basis rank reaches 4, so only
    # tiny graphs ever report it unsatisfied.
    target = math.sqrt(cfg.epsilon) / 6.0
    lhs = cfg.c0 * cfg.c0 * rank
    rhs = 4.0 * cfg.beta * target * target
    return {"lhs": lhs, "rhs": rhs, "satisfied": bool(lhs >= rhs)}


def _analyze(cfg: RunConfig) -> tuple[WeightedGraph, IncidenceFactors, SpectralProfile]:
    g = io.load_graph(cfg.graph_path)
    factors = incidence_factors(g)
    return g, factors, spectral_profile(factors)


def cmd_leverage(cfg: RunConfig) -> dict[str, Any]:
    """Per-edge scores: leverage, resistance, and sampling probabilities."""
    t0 = time.perf_counter()
    g, factors, profile = _analyze(cfg)
    p = leverage_probabilities(profile, beta=cfg.beta)
    return {
        "n": g.n,
        "m": g.m,
        "rank": profile.rank,
        "leverage": profile.leverage.tolist(),
        "resistance": profile.resistance.tolist(),
        "probabilities": p.tolist(),
        "leverage_sum": float(profile.leverage.sum()),
        "max_leverage": float(profile.leverage.max()),
        "timings": {"total": time.perf_counter() - t0},
    }


def cmd_resistance(cfg: RunConfig) -> dict[str, Any]:
    """Per-edge effective resistances via the dense pseudoinverse route."""
    t0 = time.perf_counter()
    g, factors, profile = _analyze(cfg)
    dense_route = effective_resistances(g)
    return {
        "n": g.n,
        "m": g.m,
        "rank": profile.rank,
        "resistance": dense_route.tolist(),
        "lemma_max_relerr": _lemma_max_relerr(g, profile),
        "timings": {"total": time.perf_counter() - t0},
    }


def cmd_sparsify(cfg: RunConfig) -> dict[str, Any]:
    """Draw one sparsifier and report its size and concentration deviation."""
    t0 = time.perf_counter()
    g, factors, profile = _analyze(cfg)
    plan, source = _plan_for(cfg, profile, g.n, cfg.seed)
    system = build_sparsifier(factors, plan)
    deviation = concentration_check(profile.basis, plan, samples=system.samples)
    return {
        "n": g.n,
        "m": g.m,
        "rank": profile.rank,
        "r": plan.r,
        "r_source": source,
        "off_theorem": source == "override",
        "distinct_edges": system.distinct_edges,
        "nnz": system.nnz,
        "deviation": deviation,
        "concentration_bound": math.sqrt(cfg.epsilon) / 2.0,
        "timings": {"total": time.perf_counter() - t0},
    }


def _solve_pair(
    cfg: RunConfig,
    factors: IncidenceFactors,
    profile: SpectralProfile,
    plan: SamplingPlan,
    b: np.ndarray,
    L,
):
    exact = solve_exact(L, b, profile=profile)
    system = build_sparsifier(factors, plan)
    approx = solve_sparsified(system, b)
    scored = error_report(exact, approx, factors, cfg.epsilon)
    return exact, system, scored


def cmd_solve(cfg: RunConfig) -> dict[str, Any]:
    """End-to-end: score edges, sparsify once, solve both systems, compare."""
    t0 = time.perf_counter()
    g, factors, profile = _analyze(cfg)
    t_analyze = time.perf_counter()
    L = laplacian_of(g)
    b = _load_rhs(cfg, g.n)
    plan, source = _plan_for(cfg, profile, g.n, cfg.seed)
    t_plan = time.perf_counter()
    exact, system, scored = _solve_pair(cfg, factors, profile, plan, b, L)
    t_done = time.perf_counter()
    return {
        "n": g.n,
        "m": g.m,
        "rank": profile.rank,
        "r": plan.r,
        "r_source": source,
        "off_theorem": source == "override",
        "exact": {
            "x": exact.x.tolist(),
            "residual_two_norm": exact.residual_two_norm,
            "null_component": exact.null_component,
            "rank": exact.rank,
        },
        "sparsified": {
            "x": scored.x.tolist(),
            "residual_two_norm": scored.residual_two_norm,
            "null_component": scored.null_component,
            "rank": scored.rank,
            "energy_error": scored.energy_error,
            "relative_energy_error": scored.relative_energy_error,
            "success": scored.success,
        },
        "sparsifier": {"distinct_edges": system.distinct_edges, "nnz": system.nnz},
        "timings": {
            "analyze": t_analyze - t0,
            "plan": t_plan - t_analyze,
            "solve": t_done - t_plan,
            "total": t_done - t0,
        },
    }


def cmd_verify(cfg: RunConfig) -> VerifyReport:
    """Repeat the sparsify-and-solve pipeline over independent trial seeds.

    The graph analysis, exact solve, and right-hand side are shared across
    trials; only the edge draws differ. Quantile and mean statistics of the
    per-trial concentration deviations come back alongside the success rate
    so both the per-trial and the in-expectation guarantees can be judged.
    """
    g, factors, profile = _analyze(cfg)
    L = laplacian_of(g)
    b = _load_rhs(cfg, g.n)
    exact = solve_exact(L, b, profile=profile)
    plan0, source = _plan_for(cfg, profile, g.n, cfg.seed)
    bound = math.sqrt(cfg.epsilon) / 2.0

    records = []
    deviations = np.empty(cfg.trials)
    success_count = 0
    for t in range(cfg.trials):
        seed_t = trial_seed(cfg.seed, t)
        plan = dataclasses.replace(plan0, seed=seed_t)
        system = build_sparsifier(factors, plan)
        approx = solve_sparsified(system, b)
        scored = error_report(exact, approx, factors, cfg.epsilon)
        deviation = concentration_check(profile.basis, plan, samples=system.samples)
        deviations[t] = deviation
        success_count += bool(scored.success)
        records.append(
            {
                "trial": t,
                "seed": seed_t,
                "energy_error": scored.energy_error,
                "relative_energy_error": scored.relative_energy_error,
                "success": scored.success,
                "deviation": deviation,
                "deviation_within_bound": bool(deviation <= bound),
                "distinct_edges": system.distinct_edges,
                "nnz": system.nnz,
                "rank": scored.rank,
            }
        )

    pass_count = int(np.count_nonzero(deviations <= bound))
    if cfg.trials > 1:
        std_error = float(np.std(deviations, ddof=1) / math.sqrt(cfg.trials))
    else:
        std_error = float("nan")
    quantiles = {
        f"q{q}": float(np.percentile(deviations, q)) for q in (0, 25, 50, 75, 100)
    }
    return VerifyReport(
        trials=cfg.trials,
        success_count=success_count,
        success_rate=success_count / cfg.trials,
        epsilon=cfg.epsilon,
        beta=cfg.beta,
        c0=cfg.c0,
        r=plan0.r,
        off_theorem=source == "override",
        rank=profile.rank,
        concentration_bound=bound,
        concentration_pass_count=pass_count,
        concentration_pass_rate=pass_count / cfg.trials,
        mean_concentration_deviation=float(deviations.mean()),
        concentration_std_error=std_error,
        mean_deviation_target=math.sqrt(cfg.epsilon) / 6.0,
        oversampling_condition=_oversampling_condition(cfg, profile.rank),
        max_sv_deviation_quantiles=quantiles,
        lemma_max_relerr=_lemma_max_relerr(g, profile),
        records=tuple(records),
    )


def _jsonable(value: Any) -> Any:
    """Plain-Python, JSON-safe copy: numpy scalars unwrapped, non-finite → None."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        f = float(value)
        return f if math.isfinite(f) else None
    return value


def run_report(cfg: RunConfig) -> dict[str, Any]:
    """Dispatch on cfg.mode and wrap the payload in the report envelope."""
    t0 = time.perf_counter()
    if cfg.mode == "leverage":
        results = cmd_leverage(cfg)
    elif cfg.mode == "resistance":
        results = cmd_resistance(cfg)
    elif cfg.mode == "sparsify":
        results = cmd_sparsify(cfg)
    elif cfg.mode == "solve":
        results = cmd_solve(cfg)
    elif cfg.mode == "verify":
        results = dataclasses.asdict(cmd_verify(cfg))
        results["records"] = list(results["records"])
        results["timings"] = {"total": time.perf_counter() - t0}
    else:  # unreachable; RunConfig rejects unknown modes
        raise ParameterError(f"unknown mode {cfg.mode!r}")
    return _jsonable(
        {
            "mode": cfg.mode,
            "config": dataclasses.asdict(cfg),
            "results": results,
            "version": VERSION,
        }
    )
