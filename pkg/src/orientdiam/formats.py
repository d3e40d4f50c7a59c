"""Edge-list and DOT serialization of digraphs.

Edge-list format (ASCII, LF-terminated, 0-based)::

    n m
    u v        # m lines, one arc u -> v each

Blank lines and ``#`` comments are tolerated on input.
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

from .digraph import Digraph, OrientationError, from_oriented_edges

__all__ = ["EdgeListError", "parse_edge_list", "format_edge_list", "read_edge_list", "write_edge_list", "to_dot", "write_dot"]

PathLike = Union[str, Path]


class EdgeListError(ValueError):
    """Malformed edge list; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _ints(text: str, lineno: int, count: int) -> list[int]:
    fields = text.split()
    if len(fields) != count:
        raise EdgeListError(f"expected {count} integers, got {len(fields)}: {text.strip()!r}", lineno)
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise EdgeListError(f"not an integer in {text.strip()!r}", lineno) from None


def parse_edge_list(text: str) -> Digraph:
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise EdgeListError("empty input: missing 'n m' header")
    hl, header = rows[0]
    n, m = _ints(header, hl, 2)
    if n < 0 or m < 0:
        raise EdgeListError(f"negative count in header {header!r}", hl)
    arcs = rows[1:]
    if len(arcs) != m:
        where = arcs[m][0] if len(arcs) > m else None
        raise EdgeListError(f"header announces {m} arcs, found {len(arcs)}", where)
    pairs = [tuple(_ints(body, lineno, 2)) for lineno, body in arcs]
    # validate in file order so the error names the first offending line
    seen = set()
    for (u, v), (lineno, _) in zip(pairs, arcs):
        if not (0 <= u < n and 0 <= v < n) or u == v or (u, v) in seen or (v, u) in seen:
            try:
                from_oriented_edges(n, [p for p in seen] + [(u, v)])
            except OrientationError as exc:
                raise EdgeListError(str(exc), lineno) from None
        seen.add((u, v))
    return from_oriented_edges(n, pairs)


def format_edge_list(D: Digraph) -> str:
    arcs = D.arc_list()
    lines = [f"{D.n} {len(arcs)}"] + [f"{u} {v}" for u, v in arcs]
    return "\n".join(lines) + "\n"


def read_edge_list(path: PathLike) -> Digraph:
    data = Path(path).read_bytes()
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise EdgeListError(f"{path}: not ASCII (byte {exc.start})") from None
    return parse_edge_list(text)


def write_edge_list(D: Digraph, path: PathLike):
    Path(path).write_bytes(format_edge_list(D).encode("ascii"))


def to_dot(D: Digraph, name: str = "D", parts: Optional[Sequence[int]] = None) -> str:
    """Graphviz ``digraph``; one ``u -> v;`` statement per arc.  With
    ``parts`` given, vertices are grouped into one cluster per part."""
    lines = [f"digraph {name} {{"]
    if parts is not None:
        start = 0
        for i, size in enumerate(parts):
            members = " ".join(str(v) for v in range(start, start + size))
            lines.append(f'  subgraph cluster_{i} {{ label="V{i + 1}"; {members}; }}')
            start += size
    else:
        lines.extend(f"  {v};" for v in range(D.n))
    lines.extend(f"  {u} -> {v};" for u, v in D.arc_list())
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(D: Digraph, path: PathLike, parts: Optional[Sequence[int]] = None):
    Path(path).write_text(to_dot(D, parts=parts), encoding="ascii")
