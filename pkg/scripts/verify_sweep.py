#!/usr/bin/env python3
"""Sweep the Monte Carlo verification over graph families and accuracies.

Prints one row per (family, epsilon): the derived sample count, the
energy-error success rate against the 2/3 target, the per-trial
concentration pass rate, and the mean deviation against its in-expectation
allowance. Optionally dumps the full reports as JSON.

Example:
    python3 scripts/verify_sweep.py --trials 100 --seed 20260818 --out sweep.json
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import tempfile
from pathlib import Path

import numpy as np

import resist_sketch as rs

FAMILIES = {
    "path10": lambda: rs.path(10),
    "cycle12": lambda: rs.cycle(12),
    "complete8": lambda: rs.complete(8),
    "random15": lambda: rs.random_connected(15, np.random.default_rng(101)),
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=20260818)
    parser.add_argument(
        "--epsilon", type=float, action="append", default=None,
        help="may be given repeatedly (default: 0.5 and 0.8)",
    )
    parser.add_argument("--out", type=Path, default=None, help="write full reports as JSON")
    args = parser.parse_args(argv)
    epsilons = args.epsilon or [0.5, 0.8]

    header = (
        f"{'graph':>10s} {'eps':>4s} {'r':>6s} {'success':>8s} "
        f"{'conc pass':>9s} {'mean dev':>9s} {'allowance':>9s}"
    )
    print(header)
    print("-" * len(header))
    dumped = {}
    all_ok = True
    with tempfile.TemporaryDirectory() as tmp:
        for name, make in FAMILIES.items():
            graph_path = Path(tmp) / f"{name}.txt"
            with open(graph_path, "w", encoding="utf-8") as fh:
                rs.save_graph(make(), fh)
            for epsilon in epsilons:
                cfg = rs.RunConfig(
                    graph_path=str(graph_path), mode="verify",
                    epsilon=epsilon, seed=args.seed, trials=args.trials,
                )
                rep = rs.cmd_verify(cfg)
                allowance = rep.mean_deviation_target + 2 * rep.concentration_std_error
                ok = (
                    rep.success_rate >= 2 / 3
                    and rep.concentration_pass_rate >= 2 / 3
                    and rep.mean_concentration_deviation <= allowance
                )
                all_ok &= ok
                print(
                    f"{name:>10s} {epsilon:4.2f} {rep.r:6d} {rep.success_rate:8.2f} "
                    f"{rep.concentration_pass_rate:9.2f} "
                    f"{rep.mean_concentration_deviation:9.4f} {allowance:9.4f}"
                    + ("" if ok else "   <- below target")
                )
                dumped[f"{name}-eps{epsilon}"] = dataclasses.asdict(rep)
    if args.out is not None:
        args.out.write_text(json.dumps(dumped, indent=2, default=float), encoding="utf-8")
        print(f"\nfull reports written to {args.out}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
