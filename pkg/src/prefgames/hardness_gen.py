"""Hardness-instance generator.

Builds, from a 2P2N-3SAT formula (each variable twice positive and twice
negative, so 3C = 4V), a preference-game instance whose strong-majority
subversion question encodes satisfiability.  The instance is assembled from:

* one 25-vertex / 50-edge gadget per variable — two literal vertices, a
  7-vertex path hanging off each literal, a hub joining the path ends, an
  anchor adjacent to all fourteen path vertices, the hub and seven private
  leaves;
* one 18-vertex / 32-edge gadget per clause — a core adjacent to two support
  vertices, which share fifteen leaves; the core also connects to its three
  literal vertices;
* a clique of N "asocial" vertices (stubborn by calibration) plus 6C+1
  graded vertices whose thresholds form a cascade: graded vertex i flips to
  opinion 1 exactly when at least N+i of its clique neighbours are at 1;
* enough isolated vertices to pad the total order to n = 2(N + 147C/4) + 1.

Vertex ids are laid out contiguously: variable gadgets, clause gadgets,
clique (asocial before graded), isolated — the layout is part of the file
format contract.  ``proper_assignment`` produces the canonical minority-1
belief assignment, and ``guided_subversion_run`` drives the instance from
truthful beliefs to a 1-majority equilibrium when handed a satisfying
assignment, verifying each predicted step along the way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .dynamics import MoveRow, MoveTrace, PreferFlipToOne, run_to_equilibrium
from .errors import InvalidParams, Not2P2N, Not3SAT, ReductionMismatch
from .game_core import (
    Graph,
    StubbornnessProfile,
    flip,
    improving_flip,
    is_equilibrium,
)

VAR_GADGET_VERTICES = 25
VAR_GADGET_EDGES = 50
CLAUSE_GADGET_VERTICES = 18
CLAUSE_GADGET_EDGES = 32

# Offsets inside a variable gadget.
POS_LITERAL = 0
NEG_LITERAL = 1
POS_PATH = tuple(range(2, 9))  # seven path vertices on the positive side
NEG_PATH = tuple(range(9, 16))
HUB = 16
ANCHOR = 17
ANCHOR_LEAVES = tuple(range(18, 25))

# Offsets inside a clause gadget.
CORE = 0
SUPPORT_1 = 1
SUPPORT_2 = 2
CLAUSE_LEAVES = tuple(range(3, 18))

EPSILON_SUP = Fraction(133, 155)


@dataclass(frozen=True)
class Formula2P2N:
    """A 3-CNF formula in which every variable occurs exactly twice
    positively and twice negatively (hence 3C = 4V and 4 | C)."""

    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        c = len(self.clauses)
        if c == 0 or c % 4 != 0:
            raise Not3SAT(f"clause count must be a positive multiple of 4, got {c}")
        counts: dict[int, list[int]] = {}
        for cl in self.clauses:
            if len(cl) != 3:
                raise Not3SAT(f"clause {cl!r} must have exactly 3 literals")
            if any(not isinstance(lit, int) or lit == 0 for lit in cl):
                raise Not3SAT(f"clause {cl!r} contains an invalid literal")
            if len({abs(lit) for lit in cl}) != 3:
                raise Not3SAT(f"clause {cl!r} repeats a variable")
            for lit in cl:
                counts.setdefault(abs(lit), [0, 0])[0 if lit > 0 else 1] += 1
        v = 3 * c // 4
        if set(counts) != set(range(1, v + 1)):
            raise Not2P2N(
                f"variable ids must be exactly 1..{v}, got {sorted(counts)}"
            )
        for var in range(1, v + 1):
            pos, neg = counts[var]
            if (pos, neg) != (2, 2):
                raise Not2P2N(
                    f"variable {var} occurs {pos}x positively and {neg}x"
                    " negatively (need 2 and 2)"
                )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def num_variables(self) -> int:
        return 3 * len(self.clauses) // 4

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.num_variables:
            raise ValueError("assignment length does not match variable count")
        return all(
            any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in cl)
            for cl in self.clauses
        )


def parse_2p2n_3sat(text: str) -> Formula2P2N:
    """Parse DIMACS CNF text (``c`` comments, optional ``p cnf V C`` header,
    0-terminated clauses) and validate the 2P2N occurrence pattern."""
    header = None
    tokens: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as e:
                raise ValueError(f"bad DIMACS header {line!r}") from e
            continue
        for tok in line.split():
            try:
                tokens.append(int(tok))
            except ValueError as e:
                raise ValueError(f"bad literal token {tok!r}") from e
    clauses: list[tuple[int, ...]] = []
    cur: list[int] = []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(t)
    if cur:
        clauses.append(tuple(cur))
    formula = Formula2P2N(tuple(clauses))  # type: ignore[arg-type]
    if header is not None:
        if header[0] != formula.num_variables:
            raise ValueError(
                f"header promises {header[0]} variables,"
                f" formula uses {formula.num_variables}"
            )
        if header[1] != formula.num_clauses:
            raise ValueError(
                f"header promises {header[1]} clauses, file has"
                f" {formula.num_clauses}"
            )
    return formula


def format_2p2n_3sat(formula: Formula2P2N) -> str:
    lines = [f"p cnf {formula.num_variables} {formula.num_clauses}"]
    lines.extend(" ".join(str(lit) for lit in cl) + " 0" for cl in formula.clauses)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReductionInstance:
    formula: Formula2P2N
    epsilon: Fraction
    N: int
    graph: Graph
    profile: StubbornnessProfile
    roles: tuple[str, ...]

    @property
    def C(self) -> int:
        return self.formula.num_clauses

    @property
    def V(self) -> int:
        return self.formula.num_variables

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def params(self) -> dict:
        return {"C": self.C, "V": self.V, "N": self.N, "epsilon": self.epsilon}

    # -- layout ------------------------------------------------------------
    def var_base(self, var: int) -> int:
        if not 1 <= var <= self.V:
            raise ValueError(f"variable {var} out of range 1..{self.V}")
        return VAR_GADGET_VERTICES * (var - 1)

    def var_gadget_ids(self, var: int) -> range:
        base = self.var_base(var)
        return range(base, base + VAR_GADGET_VERTICES)

    def literal_vertex(self, lit: int) -> int:
        base = self.var_base(abs(lit))
        return base + (POS_LITERAL if lit > 0 else NEG_LITERAL)

    def clause_base(self, j: int) -> int:
        if not 1 <= j <= self.C:
            raise ValueError(f"clause index {j} out of range 1..{self.C}")
        return VAR_GADGET_VERTICES * self.V + CLAUSE_GADGET_VERTICES * (j - 1)

    def clause_gadget_ids(self, j: int) -> range:
        base = self.clause_base(j)
        return range(base, base + CLAUSE_GADGET_VERTICES)

    def gadget_ids(self) -> range:
        return range(VAR_GADGET_VERTICES * self.V + CLAUSE_GADGET_VERTICES * self.C)

    def clique_ids(self) -> range:
        start = VAR_GADGET_VERTICES * self.V + CLAUSE_GADGET_VERTICES * self.C
        return range(start, start + self.N + 6 * self.C + 1)

    def asocial_ids(self) -> range:
        clique = self.clique_ids()
        return range(clique.start, clique.start + self.N)

    def graded_ids(self) -> range:
        clique = self.clique_ids()
        return range(clique.start + self.N, clique.stop)

    def isolated_ids(self) -> range:
        return range(self.clique_ids().stop, self.n)


def _var_gadget_edges(base: int) -> list[tuple[int, int]]:
    pos_lit, neg_lit = base + POS_LITERAL, base + NEG_LITERAL
    pos_path = [base + off for off in POS_PATH]
    neg_path = [base + off for off in NEG_PATH]
    hub, anchor = base + HUB, base + ANCHOR
    edges = []
    for p in pos_path:
        edges.append((pos_lit, p))
    for p in neg_path:
        edges.append((neg_lit, p))
    for chain in (pos_path, neg_path):
        edges.extend(zip(chain, chain[1:]))
    edges.append((pos_path[-1], hub))
    edges.append((neg_path[-1], hub))
    edges.append((hub, anchor))
    for p in pos_path + neg_path:
        edges.append((p, anchor))
    for off in ANCHOR_LEAVES:
        edges.append((anchor, base + off))
    return edges


def _clause_gadget_edges(base: int) -> list[tuple[int, int]]:
    core, s1, s2 = base + CORE, base + SUPPORT_1, base + SUPPORT_2
    edges = [(core, s1), (core, s2)]
    for off in CLAUSE_LEAVES:
        edges.append((s1, base + off))
        edges.append((s2, base + off))
    return edges


def max_N(formula: Formula2P2N, epsilon: Fraction) -> int:
    """Largest padding size compatible with the minority-margin epsilon."""
    c = formula.num_clauses
    bound = (133 - 147 * Fraction(epsilon)) * c / (4 * Fraction(epsilon))
    return int(bound) if bound >= 0 else -1  # floor for nonnegative bounds


def build_reduction(
    formula: Formula2P2N, epsilon, N: int
) -> ReductionInstance:
    """Assemble the full instance; raises ``InvalidParams`` naming the failed
    constraint when (epsilon, N) lie outside the feasible box."""
    epsilon = Fraction(epsilon)
    c, v = formula.num_clauses, formula.num_variables
    if not 0 < epsilon < EPSILON_SUP:
        raise InvalidParams(
            f"epsilon must satisfy 0 < epsilon < 133/155, got {epsilon}"
        )
    if N % 2 != 0:
        raise InvalidParams(f"N must be even, got {N}")
    if N < 6 * c + 2:
        raise InvalidParams(f"N must be at least 6C+2 = {6 * c + 2}, got {N}")
    top = max_N(formula, epsilon)
    if N > top:
        raise InvalidParams(
            f"N must be at most floor((133-147*eps)*C/(4*eps)) = {top}, got {N}"
        )

    clique = range(
        VAR_GADGET_VERTICES * v + CLAUSE_GADGET_VERTICES * c,
        VAR_GADGET_VERTICES * v + CLAUSE_GADGET_VERTICES * c + N + 6 * c + 1,
    )
    isolated_count = N + 123 * c // 4
    n = clique.stop + isolated_count

    edges: list[tuple[int, int]] = []
    for var in range(1, v + 1):
        edges.extend(_var_gadget_edges(VAR_GADGET_VERTICES * (var - 1)))
    for j in range(c):
        base = VAR_GADGET_VERTICES * v + CLAUSE_GADGET_VERTICES * j
        edges.extend(_clause_gadget_edges(base))
        core = base + CORE
        for lit in formula.clauses[j]:
            lit_vertex = VAR_GADGET_VERTICES * (abs(lit) - 1) + (
                POS_LITERAL if lit > 0 else NEG_LITERAL
            )
            edges.append((lit_vertex, core))
    edges.extend(combinations(clique, 2))

    alphas = [Fraction(1, 3)] * n
    asocial_alpha = Fraction(2 * (N + 6 * c) + 1, 2 * (N + 6 * c) + 2)
    for w in range(clique.start, clique.start + N):
        alphas[w] = asocial_alpha
    for i in range(6 * c + 1):
        t = N - 6 * c + 2 * i - 1
        alphas[clique.start + N + i] = Fraction(t, t + 1)

    roles: list[str] = []
    for var in range(1, v + 1):
        roles.append(f"var{var}:pos_literal")
        roles.append(f"var{var}:neg_literal")
        roles.extend(f"var{var}:pos_path{i}" for i in range(1, 8))
        roles.extend(f"var{var}:neg_path{i}" for i in range(1, 8))
        roles.append(f"var{var}:hub")
        roles.append(f"var{var}:anchor")
        roles.extend(f"var{var}:anchor_leaf{i}" for i in range(1, 8))
    for j in range(1, c + 1):
        roles.append(f"clause{j}:core")
        roles.append(f"clause{j}:support1")
        roles.append(f"clause{j}:support2")
        roles.extend(f"clause{j}:leaf{i}" for i in range(1, 16))
    roles.extend(f"clique:asocial{i}" for i in range(N))
    roles.extend(f"clique:graded{i}" for i in range(6 * c + 1))
    roles.extend(f"isolated{i}" for i in range(isolated_count))

    graph = Graph(n, edges)
    profile = StubbornnessProfile(alphas)
    instance = ReductionInstance(
        formula, epsilon, N, graph, profile, tuple(roles)
    )
    if n != 2 * (N + 147 * c // 4) + 1 or len(roles) != n:
        raise AssertionError("vertex layout does not close up")
    return instance


def proper_assignment(
    instance: ReductionInstance, var_truth: Sequence[bool] | None = None
) -> tuple[int, ...]:
    """The canonical minority-1 beliefs: anchors, one literal per variable
    (the true one under ``var_truth``, positive by default), both supports of
    every clause, and the asocial clique vertices."""
    v, c, big_n = instance.V, instance.C, instance.N
    if var_truth is None:
        var_truth = [True] * v
    if len(var_truth) != v:
        raise ValueError("var_truth length does not match variable count")
    bits = [0] * instance.n
    for var in range(1, v + 1):
        base = instance.var_base(var)
        bits[base + ANCHOR] = 1
        bits[base + (POS_LITERAL if var_truth[var - 1] else NEG_LITERAL)] = 1
    for j in range(1, c + 1):
        base = instance.clause_base(j)
        bits[base + SUPPORT_1] = 1
        bits[base + SUPPORT_2] = 1
    for w in instance.asocial_ids():
        bits[w] = 1
    ones = sum(bits)
    if ones != 2 * v + 2 * c + big_n:
        raise AssertionError("proper assignment has the wrong ones count")
    margin = Fraction(instance.n - 1, 2) * (1 - instance.epsilon)
    if ones > margin:
        raise InvalidParams(
            f"proper assignment has {ones} ones, above the margin {margin}"
        )
    return tuple(bits)


def guided_subversion_run(
    instance: ReductionInstance, satisfying_assignment: Sequence[bool]
) -> tuple[tuple[int, ...], MoveTrace]:
    """Drive the instance from the truthful proper state to a 1-majority
    equilibrium: first the clique cascade in grade order, then upward flips
    inside the gadgets.  Raises ``ReductionMismatch`` the moment the run
    deviates from the predicted shape."""
    if not instance.formula.satisfied_by(satisfying_assignment):
        raise ValueError("assignment does not satisfy the formula")
    graph, profile = instance.graph, instance.profile
    beliefs = proper_assignment(instance, satisfying_assignment)
    state = beliefs
    rows: list[MoveRow] = []
    for i, g in enumerate(instance.graded_ids()):
        if not improving_flip(graph, profile, beliefs, state, g):
            raise ReductionMismatch(
                f"clique cascade stalls at grade {i} (vertex {g})"
            )
        state = flip(state, g)
        rows.append(MoveRow(len(rows) + 1, g, state[g], sum(state)))
    scheduler = PreferFlipToOne(instance.gadget_ids())
    final, tail = run_to_equilibrium(
        graph, profile, beliefs, initial_state=state, scheduler=scheduler
    )
    base = len(rows)
    for r in tail.rows:
        if r.new_opinion != 1:
            raise ReductionMismatch(
                f"gadget vertex {r.vertex} flipped to 0 during the fill"
            )
        rows.append(MoveRow(base + r.step, r.vertex, r.new_opinion, r.ones_after))
    if not is_equilibrium(graph, profile, beliefs, final):
        raise ReductionMismatch("guided run did not end in an equilibrium")
    return final, MoveTrace(tuple(rows), "equilibrium")
