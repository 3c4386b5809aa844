"""Text formats for graphs and colorings (1-indexed, DIMACS-like).

Graph::

    # optional comments
    p <n> <m>
    e <u> <v>        (m lines)

Coloring::

    # optional comments
    k <count>
    c <u> <v> <color>

Writers emit edges in ascending canonical order, so equal objects always
serialise to identical bytes.
"""
from __future__ import annotations

from pathlib import Path

from .errors import ColoringError, FormatError, GraphError
from .graph import Graph, build_graph
from .verify import EdgeColoring


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _ints(tokens, lineno, count):
    if len(tokens) != count:
        raise FormatError(f"line {lineno}: expected {count} fields, got {len(tokens)}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer field in {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, tok in _records(text):
        if tok[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: second header")
            n, m = _ints(tok[1:], lineno, 2)
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative count")
        elif tok[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before header")
            a, b = _ints(tok[1:], lineno, 2)
            edges.append((a - 1, b - 1))
        else:
            raise FormatError(f"line {lineno}: unknown record {tok[0]!r}")
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return build_graph(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def format_graph(g: Graph, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"p {g.n} {g.m}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> EdgeColoring:
    k = None
    colors = {}
    for lineno, tok in _records(text):
        if tok[0] == "k":
            if k is not None:
                raise FormatError(f"line {lineno}: second header")
            (k,) = _ints(tok[1:], lineno, 1)
        elif tok[0] == "c":
            if k is None:
                raise FormatError(f"line {lineno}: color before header")
            a, b, col = _ints(tok[1:], lineno, 3)
            if a == b or min(a, b) < 1:
                raise FormatError(f"line {lineno}: bad edge ({a}, {b})")
            e = (min(a, b) - 1, max(a, b) - 1)
            if e in colors:
                raise FormatError(f"line {lineno}: edge ({a}, {b}) colored twice")
            colors[e] = col
        else:
            raise FormatError(f"line {lineno}: unknown record {tok[0]!r}")
    if k is None:
        raise FormatError("missing 'k <count>' header")
    if k < 0 or (colors and k == 0):
        raise FormatError(f"bad color count {k}")
    try:
        return EdgeColoring(colors, k=k)
    except ColoringError as exc:
        raise FormatError(str(exc)) from None


def format_coloring(c: EdgeColoring, comments: list[str] | None = None) -> str:
    lines = [f"# {x}" for x in comments or []]
    lines.append(f"k {c.k}")
    lines += [f"c {u + 1} {v + 1} {c.colors[(u, v)]}" for u, v in sorted(c.colors)]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path, comments=None) -> None:
    Path(path).write_text(format_graph(g, comments))


def read_coloring(path) -> EdgeColoring:
    return parse_coloring(Path(path).read_text())


def write_coloring(c: EdgeColoring, path, comments=None) -> None:
    Path(path).write_text(format_coloring(c, comments))
