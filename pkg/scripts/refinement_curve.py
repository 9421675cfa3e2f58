#!/usr/bin/env python3
"""Median relative energy error as the sample count doubles.

Fixes one random connected graph and one right-hand side, then sweeps the
sample count over a doubling schedule, solving the sparsified system for a
batch of seeds at each level. The median error should roughly halve per
doubling; the printed curve makes that visible.

Example:
    python3 scripts/refinement_curve.py --n 15 --r0 200 --levels 5
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

import resist_sketch as rs


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=15, help="vertex count")
    parser.add_argument("--graph-seed", type=int, default=101)
    parser.add_argument("--seed", type=int, default=20260818, help="master seed")
    parser.add_argument("--r0", type=int, default=200, help="first sample count")
    parser.add_argument("--levels", type=int, default=4, help="number of doublings")
    parser.add_argument("--seeds-per-level", type=int, default=50)
    args = parser.parse_args(argv)

    g = rs.random_connected(args.n, np.random.default_rng(args.graph_seed))
    factors = rs.incidence_factors(g)
    profile = rs.spectral_profile(factors)
    p = rs.leverage_probabilities(profile)
    b = rs.default_rhs(g.n, args.seed)
    exact = rs.solve_exact(rs.laplacian_of(g), b, profile=profile)

    print(f"graph: n={g.n} m={g.m} rank={profile.rank}")
    print(f"{'r':>8s} {'median':>10s} {'q25':>10s} {'q75':>10s} {'ratio':>7s}")
    previous = None
    for level in range(args.levels):
        r = args.r0 * (2**level)
        errors = []
        for t in range(args.seeds_per_level):
            plan = rs.SamplingPlan(
                probabilities=p, beta=1.0, epsilon=0.5, c0=1.0, r=r,
                seed=rs.trial_seed(args.seed, level * args.seeds_per_level + t),
            )
            system = rs.build_sparsifier(factors, plan)
            scored = rs.error_report(
                exact, rs.solve_sparsified(system, b), factors, 0.5
            )
            errors.append(scored.relative_energy_error)
        median = float(np.median(errors))
        q25, q75 = (float(np.percentile(errors, q)) for q in (25, 75))
        ratio = "" if previous is None else f"{median / previous:7.3f}"
        print(f"{r:8d} {median:10.6f} {q25:10.6f} {q75:10.6f} {ratio:>7s}")
        previous = median
    return 0


if __name__ == "__main__":
    sys.exit(main())
