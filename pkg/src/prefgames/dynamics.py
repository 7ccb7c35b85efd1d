"""Best-response dynamics: schedulers, traced runs, and schedule exploration.

A *schedule* picks, at each step, one vertex with a strictly improving flip.
``run_to_equilibrium`` executes a scheduler and records every move;
``verify_swing`` checks the three-part certificate that a single belief-zero
vertex can tip a one-seat zero majority; ``check_all_schedules_subvert``
quantifies over schedules (exhaustively at small n, sampled otherwise).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceeded, InvalidScript, NotMajorityZero
from .game_core import (
    Graph,
    StubbornnessProfile,
    cost,
    flip,
    improving_flip,
    is_equilibrium,
)


def _improving(graph, profile, beliefs, state) -> list[int]:
    return [
        v for v in range(graph.n) if improving_flip(graph, profile, beliefs, state, v)
    ]


class LowestId:
    """Always move the smallest-id vertex that wants to move."""

    def select(self, graph, profile, beliefs, state) -> Optional[int]:
        for v in range(graph.n):
            if improving_flip(graph, profile, beliefs, state, v):
                return v
        return None


class HighestGain:
    """Move the vertex whose flip drops its exact cost the most; ties go to
    the smallest id."""

    def select(self, graph, profile, beliefs, state) -> Optional[int]:
        best = None
        best_gain = None
        for v in _improving(graph, profile, beliefs, state):
            gain = cost(graph, profile, beliefs, state, v) - cost(
                graph, profile, beliefs, flip(state, v), v
            )
            if best_gain is None or gain > best_gain:
                best, best_gain = v, gain
        return best


class PreferFlipToOne:
    """Exhaust upward (0 -> 1) moves before allowing any downward one;
    smallest id first within each class.  Optionally restricted to an
    allowed vertex set."""

    def __init__(self, allowed: Iterable[int] | None = None):
        self.allowed = None if allowed is None else frozenset(allowed)

    def select(self, graph, profile, beliefs, state) -> Optional[int]:
        fallback = None
        for v in range(graph.n):
            if self.allowed is not None and v not in self.allowed:
                continue
            if improving_flip(graph, profile, beliefs, state, v):
                if state[v] == 0:
                    return v
                if fallback is None:
                    fallback = v
        return fallback


class RandomSeeded:
    """Uniform choice among improving vertices from a seeded RNG."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def select(self, graph, profile, beliefs, state) -> Optional[int]:
        moves = _improving(graph, profile, beliefs, state)
        if not moves:
            return None
        return self.rng.choice(moves)


class Scripted:
    """Play back a fixed vertex sequence, then stop.

    Raises ``InvalidScript`` if an entry is out of range or names a vertex
    with no improving flip at its turn.
    """

    def __init__(self, ids: Sequence[int]):
        self.ids = list(ids)
        self.pos = 0

    def select(self, graph, profile, beliefs, state) -> Optional[int]:
        if self.pos >= len(self.ids):
            return None
        v = self.ids[self.pos]
        self.pos += 1
        if not isinstance(v, int) or not 0 <= v < graph.n:
            raise InvalidScript(f"scripted vertex {v!r} out of range")
        if not improving_flip(graph, profile, beliefs, state, v):
            raise InvalidScript(f"scripted vertex {v} has no improving flip")
        return v


@dataclass(frozen=True)
class MoveRow:
    step: int
    vertex: int
    new_opinion: int
    ones_after: int


@dataclass(frozen=True)
class MoveTrace:
    rows: tuple[MoveRow, ...]
    stop_reason: str  # "equilibrium" | "scheduler" | "max_steps"

    def as_tuples(self) -> list[tuple[int, int, int, int]]:
        return [(r.step, r.vertex, r.new_opinion, r.ones_after) for r in self.rows]


def default_max_steps(graph: Graph) -> int:
    top = max((graph.degree(v) for v in range(graph.n)), default=0)
    return 4 * graph.n * (top + 1)


def run_to_equilibrium(
    graph: Graph,
    profile: StubbornnessProfile,
    beliefs: Sequence[int],
    initial_state: Sequence[int] | None = None,
    scheduler=None,
    max_steps: int | None = None,
) -> tuple[tuple[int, ...], MoveTrace]:
    """Run a schedule until equilibrium, scheduler exhaustion, or the step
    valve.  Returns the final state and the per-move trace."""
    if len(beliefs) != graph.n:
        raise ValueError("beliefs length does not match graph order")
    state = tuple(beliefs) if initial_state is None else tuple(initial_state)
    if len(state) != graph.n:
        raise ValueError("state length does not match graph order")
    if scheduler is None:
        scheduler = LowestId()
    if max_steps is None:
        max_steps = default_max_steps(graph)
    rows: list[MoveRow] = []
    reason = "max_steps"
    for step in range(1, max_steps + 1):
        if is_equilibrium(graph, profile, beliefs, state):
            reason = "equilibrium"
            break
        v = scheduler.select(graph, profile, beliefs, state)
        if v is None:
            reason = "scheduler"
            break
        if not improving_flip(graph, profile, beliefs, state, v):
            raise InvalidScript(f"scheduler picked non-improving vertex {v}")
        state = flip(state, v)
        rows.append(MoveRow(step, v, state[v], sum(state)))
    else:
        # Valve exhausted; report whatever state we reached.
        reason = "max_steps"
    if reason == "max_steps" and is_equilibrium(graph, profile, beliefs, state):
        reason = "equilibrium"
    return state, MoveTrace(tuple(rows), reason)


def verify_swing(
    graph: Graph,
    profile: StubbornnessProfile,
    beliefs: Sequence[int],
    u: int,
) -> bool:
    """Certificate check for a tipping vertex ``u`` under a one-seat zero
    majority: ``u`` believes 0, its truthful flip strictly improves, and once
    it has flipped no belief-1 vertex wants to move."""
    n = graph.n
    if n - 2 * sum(beliefs) != 1:
        raise NotMajorityZero(
            "swing certificates are defined for exactly (n+1)/2 zero beliefs"
        )
    if beliefs[u] != 0:
        return False
    if not improving_flip(graph, profile, beliefs, beliefs, u):
        return False
    bumped = flip(beliefs, u)
    return not any(
        beliefs[w] == 1 and improving_flip(graph, profile, beliefs, bumped, w)
        for w in range(n)
    )


@dataclass(frozen=True)
class ScheduleReport:
    mode: str
    subverts_always: bool
    min_ones_after_swing: int
    terminals_seen: int


def check_all_schedules_subvert(
    graph: Graph,
    profile: StubbornnessProfile,
    beliefs: Sequence[int],
    u: int,
    mode: str = "exhaustive",
    samples: int = 200,
    seed: int = 0,
    max_n: int = 11,
    max_steps: int | None = None,
) -> ScheduleReport:
    """After the swing move, does *every* schedule end with a 1-majority?

    ``exhaustive`` walks the whole reachable state space (memoized over packed
    states; refuses n > ``max_n``); ``sampled`` draws seeded random schedules.
    The report also carries the lowest ones-count ever seen after the swing
    move — the subverted majority never dipping below (n+1)/2 is part of what
    the construction promises.
    """
    n = graph.n
    if n - 2 * sum(beliefs) != 1:
        raise NotMajorityZero(
            "schedule exploration assumes exactly (n+1)/2 zero beliefs"
        )
    if not improving_flip(graph, profile, beliefs, beliefs, u):
        raise ValueError(f"vertex {u} has no improving flip at the truthful state")
    start = flip(beliefs, u)
    if mode == "exhaustive":
        if n > max_n:
            raise BudgetExceeded(
                f"exhaustive exploration refuses n={n} > max_n={max_n}"
            )
        # Every maximal schedule is a path in the single-flip move relation,
        # so "all schedules subvert" means "all reachable equilibria have a
        # 1-majority" — provided the relation is acyclic, which we verify
        # instead of assuming (each flip strictly drops the mover's cost, and
        # rescaling costs by 1/(1 - alpha_v) turns that into a common exact
        # potential, so a cycle would be a model bug).
        moves_of: dict[tuple[int, ...], list[int]] = {}
        order = [start]
        seen = {start}
        i = 0
        while i < len(order):
            s = order[i]
            i += 1
            mv = _improving(graph, profile, beliefs, s)
            moves_of[s] = mv
            for v in mv:
                t = flip(s, v)
                if t not in seen:
                    seen.add(t)
                    order.append(t)
        indeg = {s: 0 for s in seen}
        for s, mv in moves_of.items():
            for v in mv:
                indeg[flip(s, v)] += 1
        ready = [s for s in seen if indeg[s] == 0]
        processed = 0
        while ready:
            s = ready.pop()
            processed += 1
            for v in moves_of[s]:
                t = flip(s, v)
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        if processed != len(seen):
            raise RuntimeError("improving-flip move relation contains a cycle")
        terminals = [s for s in seen if not moves_of[s]]
        ok = all(2 * sum(s) > n for s in terminals)
        low = min(sum(s) for s in seen)
        return ScheduleReport("exhaustive", ok, low, len(terminals))
    if mode == "sampled":
        rng = random.Random(seed)
        ok = True
        low = sum(start)
        terminals = 0
        for _ in range(samples):
            sched = RandomSeeded(rng.randrange(2**32))
            final, trace = run_to_equilibrium(
                graph, profile, beliefs, start, sched, max_steps
            )
            low = min(low, min((r.ones_after for r in trace.rows), default=sum(start)))
            if trace.stop_reason == "equilibrium":
                terminals += 1
                ok = ok and 2 * sum(final) > n
            else:
                ok = False
        return ScheduleReport("sampled", ok, low, terminals)
    raise ValueError(f"unknown mode {mode!r}")
