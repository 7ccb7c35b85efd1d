"""One-seat-majority splits and the machinery the constructive search runs on.

A *bisection* of an odd-order graph is an ordered split ``(S, S̄)`` with
``|S| = (n+1)/2``.  Each vertex's *deficiency* is its own-side neighbour count
minus its other-side neighbour count.  The search works on splits that are
locally minimal for a potential combining the cut size with the side balance
of integer stubbornness; to stay in integers we store the potential doubled:

    phi2 = 2 * cut(S, S̄) + sum(a_v for v in S) - sum(a_v for v in S̄)

A split is *workable* (``is_good``) when no big-side vertex sits below its
tolerance (``def >= -a_v`` for all of ``S``) and at least one big-side vertex
clears it strictly (``def >= a_v + 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import AlgorithmInvariantViolated, EvenN, InvalidK, NoPairExists
from .game_core import Graph, StubbornnessProfile, is_stubborn


class Bisection:
    """Ordered split caching per-vertex deficiencies, cut size and potential."""

    __slots__ = ("graph", "profile", "in_s", "defc", "cut", "phi2")

    def __init__(self, graph: Graph, profile: StubbornnessProfile, big_side: Iterable[int]):
        n = graph.n
        if n % 2 == 0:
            raise EvenN(f"bisections need an odd vertex count, got n={n}")
        if len(profile) != n:
            raise ValueError("profile length does not match graph order")
        big = set(big_side)
        if not all(isinstance(v, int) and 0 <= v < n for v in big):
            raise ValueError("big side contains out-of-range vertices")
        if len(big) != (n + 1) // 2:
            raise ValueError(
                f"big side must have (n+1)/2 = {(n + 1) // 2} vertices, got {len(big)}"
            )
        self.graph = graph
        self.profile = profile
        self.in_s = tuple(v in big for v in range(n))
        defc = []
        cut = 0
        for v in range(n):
            own = sum(1 for j in graph.adj[v] if self.in_s[j] == self.in_s[v])
            defc.append(2 * own - graph.degree(v))
            if self.in_s[v]:
                cut += graph.degree(v) - own
        self.defc = tuple(defc)
        self.cut = cut
        a = profile.a
        self.phi2 = 2 * cut + sum(a[v] if self.in_s[v] else -a[v] for v in range(n))

    def side(self, v: int) -> bool:
        """True when ``v`` sits on the big side."""
        return self.in_s[v]

    def s_list(self) -> list[int]:
        return [v for v in range(self.graph.n) if self.in_s[v]]

    def sbar_list(self) -> list[int]:
        return [v for v in range(self.graph.n) if not self.in_s[v]]

    def deficiency(self, v: int) -> int:
        return self.defc[v]

    def rank(self, v: int) -> int:
        """``ceil((a_v + 1 - def(v)) / 2)``: how many paired exchanges around
        ``v`` are needed before its deficiency clears ``a_v + 1``."""
        return -(-(self.profile.a[v] + 1 - self.defc[v]) // 2)

    def classify(self) -> "Classification":
        a = self.profile.a
        good = []
        blocking = []
        for v in range(self.graph.n):
            if not self.in_s[v]:
                continue
            if self.defc[v] >= a[v] + 1:
                good.append(v)
            elif self.defc[v] < -a[v]:
                blocking.append(v)
        return Classification(tuple(good), tuple(blocking))

    def is_good(self) -> bool:
        return self.classify().is_good

    def delta_phi2_for_swap(self, a_out: Sequence[int], b_in: Sequence[int]) -> int:
        """Potential change of exchanging ``a_out`` (big side) with ``b_in``
        (small side), computed from cached counters without building the
        swapped split."""
        adj = self.graph.adj
        a_vals = self.profile.a
        a_set = set(a_out)
        b_set = set(b_in)
        e_a = sum(1 for x, y in combinations(sorted(a_set), 2) if y in adj[x])
        e_b = sum(1 for x, y in combinations(sorted(b_set), 2) if y in adj[x])
        e_ab = sum(len(adj[b] & a_set) for b in b_set)
        d_cut = (
            sum(self.defc[x] for x in a_set)
            + sum(self.defc[x] for x in b_set)
            - 2 * e_a
            - 2 * e_b
            + 2 * e_ab
        )
        return 2 * d_cut + 2 * (sum(a_vals[x] for x in b_set) - sum(a_vals[x] for x in a_set))

    def swap_sets(self, a_out: Sequence[int], b_in: Sequence[int]) -> "Bisection":
        """Exchange ``a_out`` (leaving the big side) with ``b_in`` (joining it).

        The result is rebuilt from scratch and cross-checked against the
        incremental predictions from the cached counters; a mismatch means a
        bookkeeping bug and raises ``RuntimeError``.
        """
        a_set = set(a_out)
        b_set = set(b_in)
        if len(a_set) != len(a_out) or len(b_set) != len(b_in):
            raise ValueError("swap sets contain duplicates")
        if len(a_set) != len(b_set):
            raise ValueError("swap sets must have equal size")
        if not all(self.in_s[v] for v in a_set):
            raise ValueError("a_out must lie on the big side")
        if any(self.in_s[v] for v in b_set):
            raise ValueError("b_in must lie on the small side")
        adj = self.graph.adj
        predicted_phi2 = self.phi2 + self.delta_phi2_for_swap(a_out, b_in)
        predicted_def = list(self.defc)
        for v in range(self.graph.n):
            wa = len(adj[v] & a_set)
            wb = len(adj[v] & b_set)
            if v in a_set:
                predicted_def[v] = -self.defc[v] + 2 * wa - 2 * wb
            elif v in b_set:
                predicted_def[v] = -self.defc[v] + 2 * wb - 2 * wa
            elif self.in_s[v]:
                predicted_def[v] = self.defc[v] + 2 * (wb - wa)
            else:
                predicted_def[v] = self.defc[v] + 2 * (wa - wb)
        new_big = (set(self.s_list()) - a_set) | b_set
        out = Bisection(self.graph, self.profile, new_big)
        if out.phi2 != predicted_phi2 or list(out.defc) != predicted_def:
            raise RuntimeError("incremental swap bookkeeping disagrees with recount")
        return out

    def __repr__(self) -> str:
        return f"Bisection(big={self.s_list()}, phi2={self.phi2})"


@dataclass(frozen=True)
class Classification:
    """Big-side vertices sorted into strict clearers and blockers."""

    good_vertices: tuple[int, ...]
    obstructions: tuple[int, ...]

    @property
    def is_good(self) -> bool:
        return bool(self.good_vertices) and not self.obstructions


def _find_improving_swap(bis: Bisection, k: int):
    """First swap of size <= k that strictly lowers phi2, scanning sizes in
    increasing order and candidates lexicographically; None if k-minimal."""
    s_sorted = bis.s_list()
    sbar_sorted = bis.sbar_list()
    adj = bis.graph.adj
    a_vals = bis.profile.a
    defc = bis.defc
    for size in range(1, min(k, len(s_sorted), len(sbar_sorted)) + 1):
        # Per-B partial value: sum of deficiencies + stubbornness gained minus
        # twice the internal edges of B (all independent of A).
        b_parts = []
        for b_combo in combinations(sbar_sorted, size):
            e_b = sum(1 for x, y in combinations(b_combo, 2) if y in adj[x])
            part = sum(defc[x] + a_vals[x] for x in b_combo) - 2 * e_b
            b_parts.append((b_combo, part, set(b_combo)))
        for a_combo in combinations(s_sorted, size):
            e_a = sum(1 for x, y in combinations(a_combo, 2) if y in adj[x])
            part_a = sum(defc[x] - a_vals[x] for x in a_combo) - 2 * e_a
            a_adj = [adj[x] for x in a_combo]
            for b_combo, part_b, b_set in b_parts:
                e_ab = sum(len(nb & b_set) for nb in a_adj)
                if part_a + part_b + 2 * e_ab < 0:
                    return a_combo, b_combo
    return None


def is_k_minimal(bis: Bisection, k: int) -> bool:
    """No exchange of up to ``k`` vertices per side strictly lowers phi2."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidK(f"swap size bound must be a positive integer, got {k!r}")
    return _find_improving_swap(bis, k) is None


def local_search_k_minimal(
    graph: Graph,
    profile: StubbornnessProfile,
    k: int = 3,
    seed_side: Iterable[int] | None = None,
    on_swap=None,
) -> Bisection:
    """First-improvement descent over swaps of size 1..k.

    Starts from ``seed_side`` (default: the lowest-id (n+1)/2 vertices) and
    repeatedly applies the lexicographically first improving swap, smallest
    size first, until none remains.  Every accepted swap lowers the integer
    phi2 by at least 1, so the descent terminates.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidK(f"swap size bound must be a positive integer, got {k!r}")
    if seed_side is None:
        seed_side = range((graph.n + 1) // 2)
    bis = Bisection(graph, profile, seed_side)
    while True:
        move = _find_improving_swap(bis, k)
        if move is None:
            return bis
        bis = bis.swap_sets(*move)
        if on_swap is not None:
            on_swap(bis)


@dataclass(frozen=True)
class UPair:
    """A rebalancing exchange anchored at ``u``.

    ``a_set`` always leaves the original big side and ``b_set`` joins it from the
    small side.  For big-side ``u``: ``a_set`` are non-neighbours of ``u``,
    ``b_set`` neighbours, both of size ``rank(u)``.  For small-side ``u``:
    ``a_set`` are neighbours of ``u`` crossing over to it, ``b_set``
    non-neighbours leaving it, of sizes ``rank(u)`` and ``rank(u) - 1`` — the
    sides trade places so ``u`` ends up on the big side.  Either way the
    applied split puts ``u`` strictly above tolerance.
    """

    u: int
    a_set: frozenset[int]
    b_set: frozenset[int]


def build_u_pair(
    bisection: Bisection,
    profile: StubbornnessProfile,
    u: int,
    must_include_a: Iterable[int] = (),
    must_include_b: Iterable[int] = (),
    prefer_a: Iterable[int] = (),
) -> UPair:
    """Choose a rebalancing pair for ``u`` deterministically.

    Members are picked ascending by id; ``must_include_*`` are forced in,
    ``prefer_a`` members fill the a-side first (maximizing the overlap with
    the preferred set).  Raises ``NoPairExists`` when ``u`` is stubborn or the
    constraints cannot be met — for non-stubborn vertices the unconstrained
    pair always exists.
    """
    if profile != bisection.profile:
        raise ValueError("profile does not match the bisection's profile")
    graph = bisection.graph
    if is_stubborn(graph, profile, u):
        raise NoPairExists(f"vertex {u} is stubborn")
    r = bisection.rank(u)
    nbrs = graph.adj[u]
    if bisection.side(u):
        size_a = size_b = max(r, 0)
        pool_a = [v for v in bisection.s_list() if v != u and v not in nbrs]
        pool_b = [v for v in bisection.sbar_list() if v in nbrs]
    else:
        if r < 1:
            raise AlgorithmInvariantViolated(
                "pair-pool-size", f"small-side vertex {u} has rank {r} < 1"
            )
        size_a, size_b = r, r - 1
        pool_a = [v for v in bisection.s_list() if v in nbrs]
        pool_b = [v for v in bisection.sbar_list() if v != u and v not in nbrs]

    def pick(pool, size, musts, prefers):
        musts = sorted(set(musts))
        if any(v not in pool for v in musts):
            raise NoPairExists(f"forced members {musts} not all available for {u}")
        if len(musts) > size:
            raise NoPairExists(f"{len(musts)} forced members exceed pair size {size}")
        chosen = list(musts)
        chosen_set = set(chosen)
        preferred = sorted(set(prefers) & set(pool) - chosen_set)
        for v in preferred:
            if len(chosen) == size:
                break
            chosen.append(v)
            chosen_set.add(v)
        for v in pool:
            if len(chosen) == size:
                break
            if v not in chosen_set:
                chosen.append(v)
                chosen_set.add(v)
        if len(chosen) < size:
            raise NoPairExists(
                f"pool of {len(pool)} cannot fill a {size}-element side for {u}"
            )
        return frozenset(chosen)

    return UPair(u, pick(pool_a, size_a, must_include_a, prefer_a),
                 pick(pool_b, size_b, must_include_b, ()))


def apply_u_pair(bisection: Bisection, pair: UPair) -> Bisection:
    """Apply a rebalancing pair, returning the split it points at.

    Validates the pair against the pools it must come from and asserts the
    guarantee that makes pairs useful: the anchor ends on the big side with
    deficiency at least ``a_u + 1``.
    """
    u = pair.u
    graph = bisection.graph
    nbrs = graph.adj[u]
    big = set(bisection.s_list())
    small = set(bisection.sbar_list())
    if u in pair.a_set or u in pair.b_set:
        raise ValueError("pair sets must not contain the anchor vertex")
    if bisection.side(u):
        if len(pair.a_set) != len(pair.b_set):
            raise ValueError("big-side pair needs equal-size sets")
        if not pair.a_set <= big - {u} - nbrs:
            raise ValueError("a_set must be big-side non-neighbours of the anchor")
        if not pair.b_set <= small & nbrs:
            raise ValueError("b_set must be small-side neighbours of the anchor")
        new_big = (big - pair.a_set) | pair.b_set
    else:
        if len(pair.a_set) != len(pair.b_set) + 1:
            raise ValueError("small-side pair needs |a_set| = |b_set| + 1")
        if not pair.a_set <= big & nbrs:
            raise ValueError("a_set must be big-side neighbours of the anchor")
        if not pair.b_set <= small - {u} - nbrs:
            raise ValueError("b_set must be small-side non-neighbours of the anchor")
        new_big = (small - pair.b_set) | pair.a_set
    out = Bisection(graph, bisection.profile, new_big)
    if out.deficiency(u) < bisection.profile.a[u] + 1:
        raise AlgorithmInvariantViolated(
            "pair-target-deficiency",
            f"anchor {u} ended with deficiency {out.deficiency(u)}"
            f" < {bisection.profile.a[u] + 1}",
        )
    return out
