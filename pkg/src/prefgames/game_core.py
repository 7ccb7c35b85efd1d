"""Core model: graphs, stubbornness profiles, per-vertex costs, improving flips.

A player sitting on vertex ``v`` holds a private belief ``b(v)`` and a public
opinion ``s(v)``, both binary.  Deviating from the belief costs ``alpha_v``;
every disagreeing neighbour costs ``1 - alpha_v``.  All arithmetic on costs is
exact (``fractions.Fraction``); the flip test additionally has an all-integer
fast path so the hot loops never touch rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EvenN, InvalidStubbornness

# Exact rational type used throughout the package.
Rational = Fraction


class Graph:
    """Undirected simple graph on vertices ``0 .. n-1`` with set adjacency."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n <= 0:
            raise ValueError("graph needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def integer_stubbornness(alpha: Rational) -> int:
    """``floor(alpha / (1 - alpha))``: how many extra disagreeing neighbours a
    vertex tolerates before conformity pressure beats its anchoring."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise InvalidStubbornness(f"alpha = {alpha} not in (0, 1)")
    p, q = alpha.numerator, alpha.denominator
    return p // (q - p)


class StubbornnessProfile:
    """Per-vertex stubbornness values, exact rationals in the open (0, 1)."""

    __slots__ = ("alphas", "a")

    def __init__(self, alphas: Sequence[Rational]):
        vals = tuple(Fraction(x) for x in alphas)
        for i, x in enumerate(vals):
            if not 0 < x < 1:
                raise InvalidStubbornness(f"alpha[{i}] = {x} not in (0, 1)")
        self.alphas = vals
        # Cached integer stubbornness a_v, the only form the combinatorial
        # layer ever consumes.
        self.a = tuple(x.numerator // (x.denominator - x.numerator) for x in vals)

    def __len__(self) -> int:
        return len(self.alphas)

    def __getitem__(self, v: int) -> Rational:
        return self.alphas[v]

    def __iter__(self):
        return iter(self.alphas)

    def __eq__(self, other) -> bool:
        return isinstance(other, StubbornnessProfile) and self.alphas == other.alphas

    def __hash__(self) -> int:
        return hash(self.alphas)

    def __repr__(self) -> str:
        return f"StubbornnessProfile({list(self.alphas)!r})"


def is_stubborn(graph: Graph, profile: StubbornnessProfile, v: int) -> bool:
    """A vertex too anchored to ever sit strictly unhappy on either side of a
    one-seat-majority split: ``a_v >= min(deg(v), n - deg(v) - 1)``."""
    d = graph.degree(v)
    return profile.a[v] >= min(d, graph.n - d - 1)


def as_bits(values: Iterable[int], n: int | None = None) -> tuple[int, ...]:
    """Coerce to a tuple of 0/1 ints, validating length when ``n`` given."""
    bits = tuple(int(x) for x in values)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("entries must be 0 or 1")
    if n is not None and len(bits) != n:
        raise ValueError(f"expected {n} entries, got {len(bits)}")
    return bits


def cost(
    graph: Graph,
    profile: StubbornnessProfile,
    beliefs: Sequence[int],
    state: Sequence[int],
    v: int,
) -> Rational:
    """Exact cost of vertex ``v`` in ``state``:
    ``alpha_v * |s(v) - b(v)| + (1 - alpha_v) * #{disagreeing neighbours}``."""
    alpha = profile.alphas[v]
    sv = state[v]
    disagree = sum(1 for j in graph.adj[v] if state[j] != sv)
    return alpha * abs(sv - beliefs[v]) + (1 - alpha) * disagree


def improving_flip(
    graph: Graph,
    profile: StubbornnessProfile,
    beliefs: Sequence[int],
    state: Sequence[int],
    v: int,
) -> bool:
    """Whether flipping ``v``'s opinion strictly lowers its cost.

    Integer form of the exact comparison: with ``alpha_v = p/q``, writing
    ``diff``/``same`` for disagreeing/agreeing neighbour counts and
    ``sigma = +1`` when ``v`` currently voices its belief (else ``-1``), the
    flip improves iff ``(q - p) * (diff - same) > p * sigma``.  Ties never
    move.
    """
    alpha = profile.alphas[v]
    p, q = alpha.numerator, alpha.denominator
    sv = state[v]
    same = sum(1 for j in graph.adj[v] if state[j] == sv)
    diff = graph.degree(v) - same
    sigma = 1 if sv == beliefs[v] else -1
    return (q - p) * (diff - same) > p * sigma


def flip(state: Sequence[int], v: int) -> tuple[int, ...]:
    """Return ``state`` with vertex ``v``'s opinion toggled."""
    out = list(state)
    out[v] = 1 - out[v]
    return tuple(out)


def is_equilibrium(
    graph: Graph,
    profile: StubbornnessProfile,
    beliefs: Sequence[int],
    state: Sequence[int],
) -> bool:
    """No vertex has a strictly improving flip."""
    return not any(
        improving_flip(graph, profile, beliefs, state, v) for v in range(graph.n)
    )


def majority(state: Sequence[int]) -> int:
    """The opinion held by more than half the vertices; ties are an error."""
    ones = sum(state)
    if 2 * ones == len(state):
        raise EvenN("majority undefined: exactly half the vertices hold 1")
    return 1 if 2 * ones > len(state) else 0
