"""Plain-text interchange formats: edge lists, signal CSVs, precise JSON.

Edge list: first line ``n m`` (node count, undirected edge count), then m
lines ``u v``. The reader tolerates duplicate and reversed pairs; the writer
emits each edge once with the smaller endpoint first.

Signal CSV: header line ``value``, then one float per line, row i belonging to
node i.

JSON: all floats are rendered with 17 significant digits so that every value
round-trips to the exact same double; reports carry no timestamps, which makes
identical runs byte-identical.
"""

import json
import math
import re
import uuid
from pathlib import Path

import numpy as np

from .graphs import Graph, build_graph

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "read_signal",
    "write_signal",
    "dumps_json",
    "dump_json",
]


def read_edge_list(path) -> Graph:
    """Parse a graph from the ``n m`` / ``u v`` text format."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty edge-list file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"{path}: header must be 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"{path}: header declares {m} edges, found {len(lines) - 1} lines")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(n, edges)


def write_edge_list(g: Graph, path) -> None:
    """Write a graph in the ``n m`` / ``u v`` text format, one line per edge."""
    lines = [f"{g.n} {g.num_edges}"]
    for u in range(g.n):
        for v in g.neighbors(u):
            if v > u:
                lines.append(f"{u} {v}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_signal(path) -> np.ndarray:
    """Read a single-column ``value`` CSV into a float vector."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0] != "value":
        raise ValueError(f"{path}: signal CSV must start with a 'value' header")
    try:
        return np.array([float(ln) for ln in lines[1:]])
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric signal entry") from exc


def write_signal(values, path) -> None:
    """Write a float vector as a single-column ``value`` CSV."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1:
        raise ValueError(f"signal must be 1-D, got shape {values.shape}")
    lines = ["value"] + [format(v, ".17g") for v in values]
    Path(path).write_text("\n".join(lines) + "\n")


def _render_double(value: float) -> str:
    # shortest-exact form; integral doubles keep a ".0" so they parse back as
    # floats (this also preserves the sign of -0.0, which bare "-0" loses)
    text = format(value, ".17g")
    if not any(ch in text for ch in ".eE"):
        text += ".0"
    return text


def dumps_json(obj, indent: int = 2) -> str:
    """Serialize to JSON with floats printed to 17 significant digits.

    The stdlib encoder does not expose float formatting, so floats are swapped
    for placeholder strings and substituted after encoding; a per-call nonce
    keeps user strings that happen to look like placeholders intact. Non-finite
    floats are rejected (they have no JSON representation). numpy scalars and
    arrays are converted to their Python equivalents.
    """
    rendered: list[str] = []
    nonce = uuid.uuid4().hex

    def convert(o):
        if isinstance(o, (bool, np.bool_)):
            return bool(o)
        if isinstance(o, (np.floating, float)):
            value = float(o)
            if not math.isfinite(value):
                raise ValueError("non-finite float in JSON output")
            rendered.append(_render_double(value))
            return f"\x00{nonce}:{len(rendered) - 1}\x00"
        if isinstance(o, (np.integer, int)):
            return int(o)
        if isinstance(o, np.ndarray):
            return convert(o.tolist())
        if isinstance(o, dict):
            return {k: convert(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [convert(v) for v in o]
        return o

    token = re.compile(r'"\\u0000' + nonce + r':(\d+)\\u0000"')
    text = json.dumps(convert(obj), indent=indent)
    return token.sub(lambda m: rendered[int(m.group(1))], text)


def dump_json(obj, path, indent: int = 2) -> None:
    """Write :func:`dumps_json` output to a file with a trailing newline."""
    Path(path).write_text(dumps_json(obj, indent=indent) + "\n")
