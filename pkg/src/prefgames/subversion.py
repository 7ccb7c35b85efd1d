"""Constructive subversion search.

Given a graph and a profile with at least one non-stubborn vertex, produce a
belief assignment with a one-seat majority of zeros together with a tipping
vertex whose single truthful flip sets off a majority reversal.  The route:
descend to a 3-minimal bisection, then repair it into a workable one (no
big-side blocker, at least one strict clearer) through a fixed cascade of
single-vertex transfers and rebalancing pairs.

Every branch asserts the structural facts the design analysis guarantees at
that point and raises ``AlgorithmInvariantViolated`` if reality disagrees;
every exit re-checks the full classification of the returned split, so the
certificate is verified rather than trusted.  When ``log`` is passed, the
chosen return site (one of ``RETURN_SITES``) is appended to it — the test
corpus uses this to prove that every branch is actually exercised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .bisection import (
    Bisection,
    apply_u_pair,
    build_u_pair,
    local_search_k_minimal,
)
from .errors import (
    AlgorithmInvariantViolated,
    AllStubborn,
    NoPairExists,
    NotGood,
)
from .game_core import Graph, StubbornnessProfile, is_stubborn

RETURN_SITES = (
    "entry-flip-obstruction",
    "entry-good-in-big",
    "entry-good-in-small",
    "entry-negative-minrank",
    "small-side-pair-loop",
    "small-side-partner-pair",
    "small-side-stubborn-big",
    "big-side-pair-loop",
    "big-side-negative-obstruction",
    "big-side-tight-pair",
    "big-side-lower-rank-pair",
    "big-side-lower-rank-obstruction",
    "big-side-reswap-pair",
    "big-side-negative-witness",
    "big-side-partner-pair",
    "big-side-adjacent-cluster",
    "big-side-handoff",
    "big-side-second-partner-pair",
    "big-side-final-obstruction",
)


@dataclass(frozen=True)
class SubversionResult:
    beliefs: tuple[int, ...]
    swing: int
    witness_bisection: Bisection
    good_vertex: int


def _note(log, msg: str) -> None:
    if log is not None:
        log.append(msg)


def _check(cond: bool, invariant: str, detail: str = "") -> None:
    if not cond:
        raise AlgorithmInvariantViolated(invariant, detail)


def _pair(
    bis: Bisection,
    u: int,
    must_include_a: Iterable[int] = (),
    must_include_b: Iterable[int] = (),
    prefer_a: Iterable[int] = (),
    where: str = "",
):
    """Pair builder for call sites where the analysis guarantees existence."""
    try:
        return build_u_pair(
            bis, bis.profile, u, must_include_a, must_include_b, prefer_a
        )
    except NoPairExists as e:
        raise AlgorithmInvariantViolated("pair-pool-size", f"{where}: {e}") from e


def _finalize(bis: Bisection, u: int, site: str, log) -> tuple[Bisection, int]:
    cls = bis.classify()
    if cls.obstructions or u not in cls.good_vertices:
        raise AlgorithmInvariantViolated(
            "returned-split-not-workable",
            f"{site}: anchor={u} good={cls.good_vertices}"
            f" obstructions={cls.obstructions}",
        )
    _note(log, f"return {site}")
    return bis, u


def _min_rank_set(bis: Bisection) -> tuple[int, list[int]]:
    """Minimal rank over the non-stubborn vertices and its achievers."""
    graph, profile = bis.graph, bis.profile
    flex = [v for v in range(graph.n) if not is_stubborn(graph, profile, v)]
    if not flex:
        raise AllStubborn("all vertices stubborn")
    low = min(bis.rank(v) for v in flex)
    return low, [v for v in flex if bis.rank(v) == low]


def _promote_small_side(bis: Bisection, v: int) -> Bisection:
    """The split whose big side is the old small side plus ``v``."""
    return Bisection(bis.graph, bis.profile, set(bis.sbar_list()) | {v})


def compute_good_bisection(
    graph: Graph,
    profile: StubbornnessProfile,
    seed_side: Iterable[int] | None = None,
    log: list[str] | None = None,
) -> tuple[Bisection, int]:
    """Find a workable split and a strict clearer on its big side.

    Raises ``AllStubborn`` when no vertex can ever clear its tolerance (then
    no workable split exists at all).
    """
    n = graph.n
    if len(profile) != n:
        raise ValueError("profile length does not match graph order")
    if all(is_stubborn(graph, profile, v) for v in range(n)):
        raise AllStubborn("all vertices stubborn")
    bis = local_search_k_minimal(graph, profile, 3, seed_side)
    _note(log, f"minimal split big={bis.s_list()} phi2={bis.phi2}")
    a = profile.a

    # Warm-up exits decided on the minimal split itself.
    for u in bis.s_list():
        if bis.deficiency(u) <= -a[u] - 1:
            moved = _promote_small_side(bis, u)
            return _finalize(moved, u, "entry-flip-obstruction", log)
    for u in bis.s_list():
        if bis.deficiency(u) >= a[u] + 1:
            return _finalize(bis, u, "entry-good-in-big", log)
    for u in bis.sbar_list():
        if bis.deficiency(u) >= a[u] + 1:
            # Any big-side vertex can cross over; the clearer is u itself.
            w = bis.s_list()[0]
            moved = _promote_small_side(bis, w)
            return _finalize(moved, u, "entry-good-in-small", log)
    low, m_set = _min_rank_set(bis)
    for u in m_set:
        if bis.side(u) and bis.deficiency(u) < 0:
            moved = _promote_small_side(bis, u)
            pair = _pair(moved, u, where="entry-negative-minrank")
            t = apply_u_pair(moved, pair)
            return _finalize(t, u, "entry-negative-minrank", log)

    if any(not bis.side(u) for u in m_set):
        return min_rank_in_not_s(bis, log)
    return min_rank_in_s(bis, log)


def min_rank_in_not_s(
    bis: Bisection, log: list[str] | None = None
) -> tuple[Bisection, int]:
    """Repair route when a minimum-rank vertex sits on the small side.

    Needs only 1-minimality of the input split, so the deep route of the
    big-side procedure can hand off to it mid-flight.
    """
    graph, profile = bis.graph, bis.profile
    low, m_set = _min_rank_set(bis)
    small_m = [u for u in m_set if not bis.side(u)]
    _check(bool(small_m), "small-side-minrank-present",
           "no minimum-rank vertex on the small side")
    m_lookup = set(m_set)
    failures: list[tuple[Bisection, int, tuple[int, ...]]] = []
    for u in small_m:
        partners = sorted(
            v for v in graph.adj[u] if bis.side(v) and v in m_lookup
        )
        if partners:
            attempts = [
                _pair(bis, u, must_include_a=(v,), where="small-side-pair-loop")
                for v in partners
            ]
        else:
            # No minimum-rank neighbour across: one unconstrained pair keeps
            # the later obstruction analysis supplied with a candidate split.
            attempts = [_pair(bis, u, where="small-side-pair-loop")]
        for pair in attempts:
            t = apply_u_pair(bis, pair)
            cls = t.classify()
            if not cls.obstructions:
                return _finalize(t, u, "small-side-pair-loop", log)
            failures.append((t, u, cls.obstructions))
    _check(bool(failures), "small-side-loop-produced-candidates",
           "the pair loop built no splits")
    y = failures[0][2][0]
    _check(not is_stubborn(graph, profile, y), "stubborn-never-returned",
           f"obstruction {y} is stubborn")
    _check(not bis.side(y), "obstruction-on-small-side",
           f"obstruction {y} sits on the big side")
    flexible_big = [v for v in bis.s_list() if not is_stubborn(graph, profile, v)]
    if flexible_big:
        v = flexible_big[0]
        _check(graph.has_edge(v, y) and bis.rank(v) == low,
               "partner-adjacent-minrank",
               f"vertex {v} (rank {bis.rank(v)}) vs obstruction {y}")
        pair = _pair(bis, v, must_include_b=(y,), where="small-side-partner-pair")
        t = apply_u_pair(bis, pair)
        return _finalize(t, v, "small-side-partner-pair", log)
    # The whole big side is stubborn: walk the obstruction itself across and
    # rebalance around it.
    hosts = sorted(set(bis.s_list()) - graph.adj[y])
    _check(bool(hosts), "nonneighbor-available",
           f"obstruction {y} adjacent to the entire big side")
    moved = Bisection(graph, profile, (set(bis.s_list()) - {hosts[0]}) | {y})
    pair = _pair(moved, y, where="small-side-stubborn-big")
    t = apply_u_pair(moved, pair)
    return _finalize(t, y, "small-side-stubborn-big", log)


def min_rank_in_s(
    bis: Bisection, log: list[str] | None = None
) -> tuple[Bisection, int]:
    """Repair route when every minimum-rank vertex sits on the big side."""
    graph, profile = bis.graph, bis.profile
    a = profile.a
    W = graph.has_edge
    low, m_set = _min_rank_set(bis)
    _check(all(bis.side(u) for u in m_set), "big-side-minrank-only",
           "a minimum-rank vertex sits on the small side")
    _check(all(bis.deficiency(u) >= 0 for u in m_set),
           "minrank-nonnegative-deficiency",
           "a minimum-rank vertex has negative deficiency after the warm-ups")

    collected: list[int] = []
    for u in m_set:
        for v in sorted(x for x in graph.adj[u] if not bis.side(x)):
            pair = _pair(bis, u, must_include_b=(v,), where="big-side-pair-loop")
            t = apply_u_pair(bis, pair)
            cls = t.classify()
            if not cls.obstructions:
                return _finalize(t, u, "big-side-pair-loop", log)
            negs = [x for x in cls.obstructions if bis.deficiency(x) < 0]
            if negs:
                y = negs[0]
                _check(not is_stubborn(graph, profile, y),
                       "stubborn-never-returned", f"obstruction {y} is stubborn")
                _check(bis.side(y), "obstruction-on-big-side",
                       f"obstruction {y} sits on the small side")
                _check(bis.rank(y) >= low + 1, "negative-obstruction-rank",
                       f"rank {bis.rank(y)} not above the minimum {low}")
                moved = _promote_small_side(bis, y)
                _check(moved.rank(y) <= low, "rank-drop-after-flip",
                       f"rank {moved.rank(y)} after crossing > {low}")
                pair0 = _pair(moved, y, where="big-side-negative-obstruction")
                t0 = apply_u_pair(moved, pair0)
                return _finalize(t0, y, "big-side-negative-obstruction", log)
            collected.extend(cls.obstructions)
    _check(bool(collected), "loop-produced-obstruction",
           "no split in the loop was workable yet none produced obstructions")

    # Seed obstruction; odd tolerance preferred, then discovery order.
    y = next((x for x in collected if a[x] % 2 == 1), collected[0])
    _check(not is_stubborn(graph, profile, y), "stubborn-never-returned",
           f"obstruction {y} is stubborn")
    _check(bis.side(y), "obstruction-on-big-side",
           f"obstruction {y} sits on the small side")
    _check(bis.deficiency(y) == 0, "post-loop-obstruction-structure",
           f"deficiency {bis.deficiency(y)} != 0")
    _check(bis.rank(y) == low and low == (a[y] + 2) // 2,
           "post-loop-obstruction-structure",
           f"rank {bis.rank(y)}, minimum {low}, tolerance {a[y]}")

    # Tight pair around y, steering the leavers toward the critical set of
    # small-side non-neighbours sitting exactly one unit above the swap level.
    promoted = _promote_small_side(bis, y)
    o_set = sorted(
        w
        for w in bis.sbar_list()
        if not W(w, y) and bis.deficiency(w) == a[y] - a[w] + 1
    )
    pair1 = _pair(promoted, y, prefer_a=o_set, where="big-side-tight-pair")
    t1 = apply_u_pair(promoted, pair1)
    a_y_set = pair1.a_set
    cls1 = t1.classify()
    if not cls1.obstructions:
        return _finalize(t1, y, "big-side-tight-pair", log)

    # Swap partner for y: preferred route picks a small-side non-neighbour at
    # the exact swap level; otherwise the tight pair's obstruction serves.
    cand = sorted(
        w
        for w in bis.sbar_list()
        if w not in a_y_set
        and not W(w, y)
        and not is_stubborn(graph, profile, w)
        and bis.deficiency(w) == a[y] - a[w]
    )
    if cand:
        y1 = cand[0]
    else:
        y1 = cls1.obstructions[0]
        _check(y1 != y and not bis.side(y1) and y1 not in a_y_set,
               "tight-pair-obstruction-location",
               f"obstruction {y1} outside the expected pool")
    _check(not is_stubborn(graph, profile, y1), "swap-partner-nonstubborn",
           f"swap partner {y1} is stubborn")
    _check(not W(y, y1), "swap-partner-nonadjacent",
           f"{y} and {y1} are adjacent")
    dy1 = bis.deficiency(y1)
    _check(
        dy1 == a[y] - a[y1] or (a[y] % 2 == 0 and dy1 == a[y] - a[y1] + 1),
        "swap-partner-deficiency",
        f"def={dy1} vs tolerances {a[y]}, {a[y1]}",
    )

    # One-for-one swap: y leaves the big side, y1 joins it.
    s2 = bis.swap_sets((y,), (y1,))
    _check(s2.phi2 - bis.phi2 in (0, 2), "swap-potential-step",
           f"phi2 moved by {s2.phi2 - bis.phi2}")
    _check(s2.rank(y) == low and s2.rank(y1) == low, "post-swap-ranks",
           f"ranks {s2.rank(y)}, {s2.rank(y1)} != {low}")

    flex = [v for v in range(graph.n) if not is_stubborn(graph, profile, v)]

    # Did the swap push someone strictly below the old minimum rank?
    lows = sorted(v for v in flex if s2.rank(v) < low)
    if lows:
        v = lows[0]
        _check(s2.side(v) and v != y1 and s2.rank(v) == low - 1,
               "lower-rank-witness-structure",
               f"vertex {v} rank {s2.rank(v)}")
        _check(bis.rank(v) == low and W(v, y1) and not W(v, y),
               "lower-rank-witness-structure",
               f"vertex {v} against the swap pair")
        pair2 = _pair(s2, v, where="big-side-lower-rank-pair")
        t2 = apply_u_pair(s2, pair2)
        cls2 = t2.classify()
        if not cls2.obstructions:
            return _finalize(t2, v, "big-side-lower-rank-pair", log)
        y2 = cls2.obstructions[0]
        _check(not is_stubborn(graph, profile, y2), "stubborn-never-returned",
               f"obstruction {y2} is stubborn")
        _check(s2.side(y2) and y2 not in pair2.a_set,
               "lower-rank-obstruction-location",
               f"obstruction {y2} outside the expected pool")
        _check(s2.deficiency(y2) < 0 and s2.rank(y2) >= low,
               "lower-rank-obstruction-structure",
               f"def={s2.deficiency(y2)} rank={s2.rank(y2)}")
        moved2 = _promote_small_side(s2, y2)
        _check(moved2.rank(y2) <= low - 1, "rank-drop-after-flip",
               f"rank {moved2.rank(y2)} after crossing")
        pair3 = _pair(moved2, y2, where="big-side-lower-rank-obstruction")
        t3 = apply_u_pair(moved2, pair3)
        return _finalize(t3, y2, "big-side-lower-rank-obstruction", log)

    # Rebalance around y from its new (small) side.
    pair4 = _pair(s2, y, where="big-side-reswap-pair")
    t4 = apply_u_pair(s2, pair4)
    cls4 = t4.classify()
    if not cls4.obstructions:
        return _finalize(t4, y, "big-side-reswap-pair", log)

    # A minimum-rank big-side vertex already under water after the swap?
    negw = sorted(
        w
        for w in flex
        if s2.side(w) and s2.rank(w) == low and s2.deficiency(w) < 0
    )
    if negw:
        w = negw[0]
        if w != y1:
            _check(bis.rank(w) == low + 1 and not W(w, y) and W(w, y1),
                   "neg-def-witness-structure",
                   f"vertex {w} against the swap pair")
        moved4 = _promote_small_side(s2, w)
        _check(moved4.rank(w) <= low - 1, "rank-drop-after-flip",
               f"rank {moved4.rank(w)} after crossing")
        # The anchor's old partner y belongs in the leaver set whenever the
        # pair has room for it; at rank 0 the pair is empty and the constraint
        # is vacuous.
        include = (y,) if moved4.rank(w) >= 1 else ()
        pair5 = _pair(moved4, w, must_include_a=include,
                      where="big-side-negative-witness")
        t5 = apply_u_pair(moved4, pair5)
        return _finalize(t5, w, "big-side-negative-witness", log)

    y4 = cls4.obstructions[0]
    _check(not is_stubborn(graph, profile, y4), "stubborn-never-returned",
           f"obstruction {y4} is stubborn")
    _check(not s2.side(y4) and y4 != y, "obstruction-on-small-side",
           f"obstruction {y4} misplaced")
    _check(W(y1, y4), "partner-adjacent-minrank",
           f"{y1} and {y4} are not adjacent")
    pair6 = _pair(s2, y1, must_include_b=(y4,), where="big-side-partner-pair")
    t6 = apply_u_pair(s2, pair6)
    cls6 = t6.classify()
    if not cls6.obstructions:
        return _finalize(t6, y1, "big-side-partner-pair", log)

    y6 = cls6.obstructions[0]
    _check(not is_stubborn(graph, profile, y6), "stubborn-never-returned",
           f"obstruction {y6} is stubborn")
    _check(s2.side(y6) and y6 not in pair6.a_set and y6 != y1,
           "partner-obstruction-location",
           f"obstruction {y6} outside the expected pool")
    # Reaching this depth pins the parity of the seed obstruction and the
    # exact level of the swap partner.
    _check(a[y] % 2 == 0, "deep-path-parity", f"tolerance {a[y]} is odd")
    _check(bis.deficiency(y1) == a[y] - a[y1] + 1, "deep-path-parity",
           f"partner deficiency {bis.deficiency(y1)}")

    c1 = W(y6, y) and W(y4, y) and W(y6, y4) and not W(y1, y6)
    c2 = W(y6, y) and not W(y4, y)
    c3 = not W(y6, y1) and not W(y6, y4)
    _check(c1 or c2 or c3, "post-t6-adjacency-cases",
           f"adjacency pattern around {y}, {y1}, {y4}, {y6} unexpected")
    if c1:
        moved5 = _promote_small_side(s2, y6)
        _check(moved5.rank(y) == low - 1, "adjacent-cluster-rank",
               f"rank {moved5.rank(y)}")
        pair7 = _pair(moved5, y, where="big-side-adjacent-cluster")
        t7 = apply_u_pair(moved5, pair7)
        return _finalize(t7, y, "big-side-adjacent-cluster", log)

    s6 = s2.swap_sets((y6,), (y4,))
    _check(s6.phi2 == s2.phi2 - 2 and s6.phi2 == bis.phi2,
           "swap-potential-invariance",
           f"phi2 chain {bis.phi2} -> {s2.phi2} -> {s6.phi2}")
    if c2:
        _check(s6.deficiency(y) == 2 and s6.rank(y) == low - 1,
               "minrank-handoff-guarantee",
               f"def={s6.deficiency(y)} rank={s6.rank(y)}")
    hand = sorted(x for x in flex if not s6.side(x) and s6.rank(x) == low - 1)
    if hand:
        _note(log, "return big-side-handoff")
        return min_rank_in_not_s(s6, log)

    _check(c3, "post-t6-adjacency-cases", "expected the doubly-nonadjacent case")
    _check(s6.rank(y1) == low - 1, "partner-rank-drop",
           f"rank {s6.rank(y1)}")
    _check(s6.deficiency(y1) == s2.deficiency(y1) + 2, "partner-rank-drop",
           f"deficiency moved {s2.deficiency(y1)} -> {s6.deficiency(y1)}")
    pair8 = _pair(s6, y1, where="big-side-second-partner-pair")
    t8 = apply_u_pair(s6, pair8)
    cls8 = t8.classify()
    if not cls8.obstructions:
        return _finalize(t8, y1, "big-side-second-partner-pair", log)

    y8 = cls8.obstructions[0]
    _check(not is_stubborn(graph, profile, y8), "stubborn-never-returned",
           f"obstruction {y8} is stubborn")
    _check(s6.side(y8) and y8 not in pair8.a_set,
           "second-partner-obstruction-location",
           f"obstruction {y8} outside the expected pool")
    _check(s6.deficiency(y8) < 0 and s6.rank(y8) >= low,
           "second-partner-obstruction-structure",
           f"def={s6.deficiency(y8)} rank={s6.rank(y8)}")
    moved6 = _promote_small_side(s6, y8)
    _check(moved6.rank(y8) <= low - 1, "rank-drop-after-flip",
           f"rank {moved6.rank(y8)} after crossing")
    pair9 = _pair(moved6, y8, where="big-side-final-obstruction")
    t9 = apply_u_pair(moved6, pair9)
    return _finalize(t9, y8, "big-side-final-obstruction", log)


def belief_from_good_bisection(
    bisection: Bisection, good_vertex: int
) -> tuple[tuple[int, ...], int]:
    """Turn a workable split into a belief assignment plus tipping vertex.

    Beliefs are 1 on the big side except at the clearer itself, 0 elsewhere —
    a one-seat majority of zeros.  The clearer's strict deficiency makes its
    truthful flip improving, and the big side's tolerance bounds keep the
    flipped coalition in place.
    """
    cls = bisection.classify()
    if not cls.is_good:
        raise NotGood("split has blockers or no strict clearer")
    if good_vertex not in cls.good_vertices:
        raise NotGood(f"vertex {good_vertex} does not clear its tolerance strictly")
    beliefs = tuple(
        1 if bisection.side(v) and v != good_vertex else 0
        for v in range(bisection.graph.n)
    )
    return beliefs, good_vertex


def find_subversion(
    graph: Graph,
    profile: StubbornnessProfile,
    seed_side: Iterable[int] | None = None,
    log: list[str] | None = None,
) -> SubversionResult:
    """End-to-end pipeline: workable split -> belief assignment + swing."""
    witness, u = compute_good_bisection(graph, profile, seed_side, log)
    beliefs, swing = belief_from_good_bisection(witness, u)
    return SubversionResult(beliefs, swing, witness, u)
