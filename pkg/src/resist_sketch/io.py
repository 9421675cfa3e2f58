"""Reading and writing the edge-list and vector file formats.

Edge-list files are UTF-8 text: a header line ``n m``, then m lines
``u v w`` with 0-based integer vertex ids and a decimal weight. Vector files
hold one decimal number per line. Lines starting with ``#`` are comments and
blank lines are ignored in both formats. Weights are written with ``repr`` so
a save/load round trip is bit-exact.
"""

from __future__ import annotations

import io as _io
import math
from pathlib import Path
from typing import IO

import numpy as np

from .errors import GraphParseError
from .graphs import WeightedGraph


def _read_text(source: str | Path | IO) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _content_lines(text: str):
    """Yield (1-based line number, stripped line), skipping comments and blanks."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"{what} is not an integer: {token!r}", lineno) from None


def _parse_weight(token: str, lineno: int) -> float:
    try:
        w = float(token)
    except ValueError:
        raise GraphParseError(f"weight is not a number: {token!r}", lineno) from None
    if not (math.isfinite(w) and w > 0.0):
        raise GraphParseError(f"weight must be finite and positive, got {token}", lineno)
    return w


def load_graph(source: str | Path | IO) -> WeightedGraph:
    """Parse an edge-list file into a WeightedGraph, edges in file order.

    Raises GraphParseError naming the offending line on any malformed line,
    non-positive weight, self-loop, out-of-range vertex id, or edge-count
    mismatch with the header.
    """
    lines = _content_lines(_read_text(source))
    try:
        header_lineno, header = next(lines)
    except StopIteration:
        raise GraphParseError("empty file: expected a 'n m' header line") from None
    tokens = header.split()
    if len(tokens) != 2:
        raise GraphParseError(f"header must be 'n m', got {header!r}", header_lineno)
    n = _parse_int(tokens[0], "vertex count", header_lineno)
    m = _parse_int(tokens[1], "edge count", header_lineno)
    if n < 2:
        raise GraphParseError(f"vertex count must be >= 2, got {n}", header_lineno)
    if m < 0:
        raise GraphParseError(f"edge count must be >= 0, got {m}", header_lineno)

    edges = []
    for lineno, line in lines:
        if len(edges) == m:
            raise GraphParseError(f"more than the {m} edges announced in the header", lineno)
        tokens = line.split()
        if len(tokens) != 3:
            raise GraphParseError(f"edge line must be 'u v w', got {line!r}", lineno)
        u = _parse_int(tokens[0], "vertex id", lineno)
        v = _parse_int(tokens[1], "vertex id", lineno)
        w = _parse_weight(tokens[2], lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex id out of range for n={n}: ({u}, {v})", lineno)
        edges.append((u, v, w))
    if len(edges) != m:
        raise GraphParseError(f"header announced {m} edges but file has {len(edges)}")
    return WeightedGraph(n, tuple(edges))


def save_graph(g: WeightedGraph, target: str | Path | IO) -> None:
    """Write ``g`` in the edge-list format; load_graph(save_graph(g)) == g."""
    out = _io.StringIO()
    out.write(f"{g.n} {g.m}\n")
    for u, v, w in g.edges:
        out.write(f"{u} {v} {w!r}\n")
    _write_text(out.getvalue(), target)


def load_vector(source: str | Path | IO) -> np.ndarray:
    """Parse a vector file: one decimal number per line."""
    values = []
    for lineno, line in _content_lines(_read_text(source)):
        if len(line.split()) != 1:
            raise GraphParseError(f"vector line must hold one number, got {line!r}", lineno)
        try:
            values.append(float(line))
        except ValueError:
            raise GraphParseError(f"not a number: {line!r}", lineno) from None
    return np.array(values, dtype=float)


def save_vector(x: np.ndarray, target: str | Path | IO) -> None:
    """Write a vector, one ``repr`` per line."""
    _write_text("".join(f"{float(v)!r}\n" for v in np.asarray(x).ravel()), target)


def _write_text(text: str, target: str | Path | IO) -> None:
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)
