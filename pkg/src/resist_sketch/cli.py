"""Command-line interface.

One subcommand per pipeline mode, all sharing the same option set so configs
can be swapped between modes without editing flags. Reports are UTF-8 JSON
on stdout or --out. Exit codes: 0 success, 1 usage or input error, 2
numerical failure inside a factorization.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .errors import FactorizationError, GraphParseError, ParameterError
from .harness import RunConfig, run_report
from .version import VERSION

_U64_MAX = 2**64 - 1


def _pipeline_options(fn):
    options = [
        click.option(
            "--graph",
            "graph_path",
            required=True,
            type=click.Path(exists=True, dir_okay=False),
            help="Edge-list graph file.",
        ),
        click.option(
            "--b",
            "b_path",
            default=None,
            type=click.Path(exists=True, dir_okay=False),
            help="Right-hand-side vector file, one number per line "
            "(default: seeded zero-sum normal vector).",
        ),
        click.option(
            "--epsilon",
            default=0.5,
            show_default=True,
            type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
            help="Target relative accuracy of the sparsified solve.",
        ),
        click.option(
            "--beta",
            default=1.0,
            show_default=True,
            type=click.FloatRange(0.0, 1.0, min_open=True),
            help="Assumed leverage-floor fraction of the sampling probabilities.",
        ),
        click.option(
            "--c0",
            default=1.0,
            show_default=True,
            type=click.FloatRange(0.0, min_open=True),
            help="Oversampling constant in the sample-count rule.",
        ),
        click.option(
            "--seed",
            default=0,
            show_default=True,
            type=click.IntRange(0, _U64_MAX),
            help="Master seed; fixes the right-hand side and every draw.",
        ),
        click.option(
            "--trials",
            default=100,
            show_default=True,
            type=click.IntRange(min=1),
            help="Trial count for verify mode.",
        ),
        click.option(
            "--r-override",
            default=None,
            type=click.IntRange(min=1),
            help="Use this sample count instead of the rule (flagged off-theorem).",
        ),
        click.option(
            "--out",
            "out_path",
            default=None,
            type=click.Path(dir_okay=False, writable=True),
            help="Write the JSON report here instead of stdout.",
        ),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _execute(mode: str, out_path: str | None, **kwargs) -> None:
    cfg = RunConfig(mode=mode, **kwargs)
    report = run_report(cfg)
    text = json.dumps(report, indent=2, allow_nan=False)
    if out_path is None:
        click.echo(text)
    else:
        Path(out_path).write_text(text + "\n", encoding="utf-8")


@click.group()
@click.version_option(version=VERSION, prog_name="resist-sketch")
def cli() -> None:
    """Leverage-score edge sampling for Laplacian least-squares problems."""


@cli.command()
@_pipeline_options
def leverage(out_path, **kwargs) -> None:
    """Per-edge leverage scores, resistances, and sampling probabilities."""
    _execute("leverage", out_path, **kwargs)


@cli.command()
@_pipeline_options
def resistance(out_path, **kwargs) -> None:
    """Effective resistances via the dense pseudoinverse, with cross-check."""
    _execute("resistance", out_path, **kwargs)


@cli.command()
@_pipeline_options
def sparsify(out_path, **kwargs) -> None:
    """Draw one sparsifier and report its size and concentration deviation."""
    _execute("sparsify", out_path, **kwargs)


@cli.command()
@_pipeline_options
def solve(out_path, **kwargs) -> None:
    """Solve the exact and sparsified systems once and compare them."""
    _execute("solve", out_path, **kwargs)


@cli.command()
@_pipeline_options
def verify(out_path, **kwargs) -> None:
    """Monte Carlo check of the accuracy and concentration guarantees."""
    _execute("verify", out_path, **kwargs)


def main(argv: list[str] | None = None) -> int:
    """Entry point with explicit exit-code mapping.

    click's own usage-error exit code is 2; here every usage, parse, or I/O
    problem exits 1 and code 2 is reserved for numerical failures.
    """
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (GraphParseError, ParameterError, OSError, UnicodeDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (FactorizationError, np.linalg.LinAlgError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
