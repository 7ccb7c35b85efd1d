"""Brute-force ground truth at small scale.

Everything here enumerates: opinion states are packed into integers
(bit ``i`` = vertex ``i``), improving flips are decided by precomputed
integer thresholds on the neighbour popcount, and reachability is a plain
exhaustive walk over single improving flips.  This module deliberately shares no logic
with the constructive search — it is the referee the search is checked
against.
"""

from __future__ import annotations

from typing import Sequence

from .errors import NotMajorityZero, TooLarge
from .game_core import Graph, StubbornnessProfile, is_stubborn

DEFAULT_MAX_N = 15


def _thresholds(graph: Graph, profile: StubbornnessProfile, beliefs: Sequence[int]):
    """Per-vertex neighbour masks and flip thresholds for packed states.

    With ``alpha_v = p/q`` and ``n1`` = number of neighbours at opinion 1:
    a vertex at 0 improves by flipping iff ``n1 >= up[v]``, a vertex at 1
    iff ``n1 <= down[v]``.  Derived from the exact strict-improvement
    inequality, so ties stay put.
    """
    masks = []
    up = []
    down = []
    for v in range(graph.n):
        mask = 0
        for j in graph.adj[v]:
            mask |= 1 << j
        masks.append(mask)
        alpha = profile.alphas[v]
        p, q = alpha.numerator, alpha.denominator
        d = graph.degree(v)
        w = q - p
        sigma0 = 1 if beliefs[v] == 0 else -1  # voicing belief while at 0?
        sigma1 = 1 if beliefs[v] == 1 else -1
        # at 0: improving iff w*(2*n1 - d) > p*sigma0
        up.append((d * w + p * sigma0) // (2 * w) + 1)
        # at 1: improving iff w*(d - 2*n1) > p*sigma1
        down.append(-((-(d * w - p * sigma1)) // (2 * w)) - 1)
    return masks, up, down


def _pack(bits: Sequence[int]) -> int:
    state = 0
    for i, b in enumerate(bits):
        if b:
            state |= 1 << i
    return state


def _improving_vertices(state: int, n: int, masks, up, down) -> list[int]:
    out = []
    for v in range(n):
        n1 = (state & masks[v]).bit_count()
        if state >> v & 1:
            if n1 <= down[v]:
                out.append(v)
        elif n1 >= up[v]:
            out.append(v)
    return out


def is_subvertable_assignment(
    graph: Graph,
    profile: StubbornnessProfile,
    beliefs: Sequence[int],
    max_n: int = DEFAULT_MAX_N,
) -> bool:
    """Whether some improving-flip schedule, starting truthful, ends in an
    equilibrium where opinion 1 holds the majority.

    Requires a strict majority of zero beliefs (the premise of the question)
    and refuses graphs beyond ``max_n`` — the check walks the reachable part
    of a 2^n state space.
    """
    n = graph.n
    if n > max_n:
        raise TooLarge(f"n={n} exceeds the enumeration budget max_n={max_n}")
    if 2 * sum(beliefs) >= n:
        raise NotMajorityZero("beliefs must have a strict majority of zeros")
    masks, up, down = _thresholds(graph, profile, beliefs)
    half = n // 2
    start = _pack(beliefs)
    seen = {start}
    frontier = [start]
    while frontier:
        state = frontier.pop()
        moves = _improving_vertices(state, n, masks, up, down)
        if not moves:
            if state.bit_count() > half:
                return True
            continue
        for v in moves:
            nxt = state ^ (1 << v)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return False


def exists_subvertable_assignment(
    graph: Graph,
    profile: StubbornnessProfile,
    exact_zeros: bool = False,
    max_n: int = DEFAULT_MAX_N,
):
    """Scan all majority-zero belief assignments in lexicographic order and
    return the first subvertable one, or None.

    ``exact_zeros`` restricts the scan to assignments with exactly
    ``(n+1)/2`` zeros (the tight one-seat majority) instead of any strict
    zero majority.  Lexicographic order reads the assignment as the string
    ``b(0) b(1) ... b(n-1)``.
    """
    n = graph.n
    if n > max_n:
        raise TooLarge(f"n={n} exceeds the enumeration budget max_n={max_n}")
    half = n // 2
    for x in range(1 << n):
        # Highest bit is vertex 0, so numeric order equals lexicographic
        # order on the belief string.
        ones = x.bit_count()
        if 2 * ones >= n:
            continue
        if exact_zeros and n - ones != (n + 1) // 2:
            continue
        beliefs = tuple((x >> (n - 1 - i)) & 1 for i in range(n))
        if is_subvertable_assignment(graph, profile, beliefs, max_n=max_n):
            return beliefs
    return None


def characterization_check(
    graph: Graph,
    profile: StubbornnessProfile,
    exact_zeros: bool = False,
    max_n: int = DEFAULT_MAX_N,
) -> bool:
    """Confirm by enumeration: a subvertable assignment exists if and only if
    some vertex is non-stubborn."""
    found = exists_subvertable_assignment(graph, profile, exact_zeros, max_n)
    any_flexible = any(not is_stubborn(graph, profile, v) for v in range(graph.n))
    return (found is not None) == any_flexible
