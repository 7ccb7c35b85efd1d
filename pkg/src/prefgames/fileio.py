"""Plain-text formats for graphs, profiles, bit vectors, traces and roles.

All formats are line-oriented and deterministic, so artifacts written by the
CLI can be diffed byte-for-byte.  Blank lines and ``#`` comments are accepted
on input everywhere.

* graph: first line ``n m``, then ``m`` lines ``u v`` with ``0 <= u < v < n``
* stubbornness: ``n`` lines, each an exact rational like ``1/3``
* bits (beliefs or opinions): a single line of ``n`` characters from ``{0,1}``
* trace: TSV with header ``step  vertex  new_opinion  ones_after``
* roles: one label per vertex per line
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .game_core import Graph, StubbornnessProfile, as_bits


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"expected 'n m' header, got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as e:
        raise ValueError(f"bad graph header {lines[0]!r}") from e
    if len(lines) - 1 != m:
        raise ValueError(f"header promises {m} edges, file has {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise ValueError(f"bad edge line {line!r}") from e
        if not u < v:
            raise ValueError(f"edge endpoints must satisfy u < v, got {line!r}")
        edges.append((u, v))
    return Graph(n, edges)


def format_graph(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def parse_stubbornness(text: str) -> StubbornnessProfile:
    lines = _content_lines(text)
    vals = []
    for line in lines:
        try:
            vals.append(Fraction(line))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"bad stubbornness value {line!r}") from e
    if not vals:
        raise ValueError("empty stubbornness file")
    return StubbornnessProfile(vals)


def format_stubbornness(profile: StubbornnessProfile) -> str:
    return "\n".join(str(x) for x in profile.alphas) + "\n"


def parse_bits(text: str, n: int | None = None) -> tuple[int, ...]:
    lines = _content_lines(text)
    if len(lines) != 1:
        raise ValueError("expected a single line of 0/1 characters")
    if any(c not in "01" for c in lines[0]):
        raise ValueError(f"bad bit string {lines[0]!r}")
    return as_bits((int(c) for c in lines[0]), n)


def format_bits(bits: Sequence[int]) -> str:
    return "".join(str(int(b)) for b in bits) + "\n"


TRACE_HEADER = "step\tvertex\tnew_opinion\tones_after"


def format_trace(rows: Iterable[tuple[int, int, int, int]]) -> str:
    lines = [TRACE_HEADER]
    lines.extend(
        f"{step}\t{vertex}\t{new_opinion}\t{ones_after}"
        for step, vertex, new_opinion, ones_after in rows
    )
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> list[tuple[int, int, int, int]]:
    lines = _content_lines(text)
    if not lines or lines[0].split("\t") != TRACE_HEADER.split("\t"):
        raise ValueError("missing trace header")
    rows = []
    for line in lines[1:]:
        parts = line.split("\t")
        if len(parts) != 4:
            raise ValueError(f"bad trace row {line!r}")
        try:
            rows.append(tuple(int(p) for p in parts))
        except ValueError as e:
            raise ValueError(f"bad trace row {line!r}") from e
    return rows


def format_roles(roles: Sequence[str]) -> str:
    return "\n".join(roles) + "\n"


def parse_roles(text: str) -> tuple[str, ...]:
    return tuple(_content_lines(text))
