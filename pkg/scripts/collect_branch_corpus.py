#!/usr/bin/env python3
"""Collect a branch-coverage corpus for the subversion search.

Hunts for inputs that exercise each of the named return sites in
``prefgames.subversion.RETURN_SITES``, three ways:

* organically, by running ``find_subversion`` over every odd-order graph in
  the networkx atlas (n <= 7, disconnected included) under a pool of
  deterministic profiles;
* organically at random, over G(n, p) graphs with mixed profiles and
  randomized local-search seeds;
* directly, by enumerating/sampling bisections that satisfy the documented
  preconditions of the two repair procedures and invoking them head-on
  (this is what reaches the deep branches).

Every output is verified (classification good, anchor clears strictly); any
``AlgorithmInvariantViolated`` is recorded and makes the script fail loudly.
Up to three smallest witnesses per site are frozen into
``tests/fixtures/branch_corpus/manifest.json`` for replay by the test suite.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from prefgames.bisection import Bisection, is_k_minimal, local_search_k_minimal
from prefgames.errors import AlgorithmInvariantViolated, AllStubborn
from prefgames.game_core import Graph, StubbornnessProfile, is_stubborn
from prefgames.subversion import (
    RETURN_SITES,
    find_subversion,
    min_rank_in_not_s,
    min_rank_in_s,
)

ALPHA_POOL = ["1/3", "1/2", "3/5", "2/3", "3/4", "9/10"]  # a = 0,1,1,2,3,9


def deterministic_profiles(n: int) -> list[list[str]]:
    """A small, fixed family of stubbornness patterns per order n."""
    patterns = [
        ["1/3"] * n,
        ["1/2"] * n,
        ["2/3"] * n,
        [("1/3", "1/2")[i % 2] for i in range(n)],
        [("1/3", "1/2", "2/3")[i % 3] for i in range(n)],
        [("1/3", "1/3", "2/3")[i % 3] for i in range(n)],
        [("1/2", "1/3", "1/3", "3/4")[i % 4] for i in range(n)],
    ]
    uniq = []
    for p in patterns:
        if p not in uniq:
            uniq.append(p)
    return uniq


def atlas_graphs(orders=(3, 5, 7)):
    """All simple graphs of the given odd orders, as edge lists."""
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n in orders:
            yield n, sorted(tuple(sorted(e)) for e in g.edges())


class Collector:
    def __init__(self, per_site: int = 3):
        self.per_site = per_site
        self.witnesses: dict[str, list[dict]] = {s: [] for s in RETURN_SITES}
        self.counts: dict[str, int] = {s: 0 for s in RETURN_SITES}
        self.failures: list[str] = []
        self.runs = 0

    def missing(self) -> list[str]:
        return [s for s in RETURN_SITES if self.counts[s] == 0]

    def _offer(self, site: str, entry: dict):
        self.counts[site] += 1
        bucket = self.witnesses[site]
        bucket.append(entry)
        bucket.sort(key=lambda e: (e["n"], len(e["edges"])))
        del bucket[self.per_site :]

    def run_find(self, graph, profile, alphas, seed_side=None) -> None:
        self.runs += 1
        n, edges = graph.n, graph.edges
        log: list[str] = []
        try:
            result = find_subversion(graph, profile, seed_side, log)
        except AllStubborn:
            return
        except AlgorithmInvariantViolated as e:
            self.failures.append(
                f"find n={n} edges={edges} alphas={alphas} seed={seed_side}: {e}"
            )
            return
        cls = result.witness_bisection.classify()
        if cls.obstructions or result.good_vertex not in cls.good_vertices:
            self.failures.append(f"bad output: n={n} edges={edges} alphas={alphas}")
            return
        entry = {
            "kind": "find",
            "n": n,
            "edges": [list(e) for e in edges],
            "alphas": list(alphas),
        }
        if seed_side is not None:
            entry["seed_side"] = sorted(seed_side)
        for line in log:
            if line.startswith("return "):
                self._offer(line.removeprefix("return "), dict(entry))

    def run_direct(self, graph, profile, alphas, big_side, flex) -> None:
        """Call a repair procedure directly when its preconditions hold."""
        self.runs += 1
        n, edges = graph.n, graph.edges
        bis = Bisection(graph, profile, big_side)
        a = profile.a
        # The repair procedures assume none of the entry exits applied.
        for u in bis.s_list():
            if bis.deficiency(u) <= -a[u] - 1 or bis.deficiency(u) >= a[u] + 1:
                return
        for u in bis.sbar_list():
            if bis.deficiency(u) >= a[u] + 1:
                return
        low = min(bis.rank(v) for v in flex)
        m_set = [v for v in flex if bis.rank(v) == low]
        if any(bis.side(u) and bis.deficiency(u) < 0 for u in m_set):
            return
        if any(not bis.side(u) for u in m_set):
            kind, proc, need_k = "not_s", min_rank_in_not_s, 1
        else:
            kind, proc, need_k = "in_s", min_rank_in_s, 3
        if not is_k_minimal(bis, need_k):
            return
        log: list[str] = []
        try:
            t, u = proc(bis, log)
        except AlgorithmInvariantViolated as e:
            self.failures.append(
                f"{kind} n={n} edges={edges} alphas={alphas} big={big_side}: {e}"
            )
            return
        cls = t.classify()
        if cls.obstructions or u not in cls.good_vertices:
            self.failures.append(
                f"bad direct output: n={n} big={big_side} alphas={alphas}"
            )
            return
        entry = {
            "kind": kind,
            "n": n,
            "edges": [list(e) for e in edges],
            "alphas": list(alphas),
            "big_side": sorted(big_side),
        }
        for line in log:
            if line.startswith("return "):
                self._offer(line.removeprefix("return "), dict(entry))


def _instance(n, edges, alphas):
    return Graph(n, edges), StubbornnessProfile([Fraction(a) for a in alphas])


def phase_atlas_find(col: Collector) -> None:
    for n, edges in atlas_graphs():
        for alphas in deterministic_profiles(n):
            graph, profile = _instance(n, edges, alphas)
            col.run_find(graph, profile, alphas)


def phase_random_find(col: Collector, iters: int, seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(iters):
        n = rng.choice([9, 11, 13, 15])
        p = rng.choice([0.18, 0.3, 0.45, 0.6, 0.75])
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        if rng.random() < 0.5:
            alphas = [rng.choice(ALPHA_POOL) for _ in range(n)]
        else:
            base = rng.choice(["1/3", "1/2", "2/3"])
            alphas = [
                base if rng.random() < 0.8 else rng.choice(ALPHA_POOL)
                for _ in range(n)
            ]
        seed_side = (
            sorted(rng.sample(range(n), (n + 1) // 2))
            if rng.random() < 0.5
            else None
        )
        graph, profile = _instance(n, edges, alphas)
        col.run_find(graph, profile, alphas, seed_side)


def phase_atlas_direct(col: Collector) -> None:
    for n, edges in atlas_graphs((5, 7)):
        bigs = list(itertools.combinations(range(n), (n + 1) // 2))
        for alphas in deterministic_profiles(n):
            graph, profile = _instance(n, edges, alphas)
            flex = [
                v for v in range(n) if not is_stubborn(graph, profile, v)
            ]
            if not flex:
                continue
            for big in bigs:
                col.run_direct(graph, profile, alphas, big, flex)


def phase_random_direct(col: Collector, iters: int, seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(iters):
        n = rng.choice([9, 9, 11, 11, 13])
        p = rng.choice([0.25, 0.4, 0.55, 0.7])
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        if rng.random() < 0.6:
            alphas = ["1/3"] * n  # even tolerances favor the deep branches
        else:
            alphas = [rng.choice(["1/3", "1/2", "2/3"]) for _ in range(n)]
        graph, profile = _instance(n, edges, alphas)
        flex = [v for v in range(n) if not is_stubborn(graph, profile, v)]
        if not flex:
            continue
        for _ in range(4):
            big = sorted(rng.sample(range(n), (n + 1) // 2))
            col.run_direct(graph, profile, alphas, big, flex)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random-find", type=int, default=20000)
    ap.add_argument("--random-direct", type=int, default=60000)
    ap.add_argument("--seed", type=int, default=20240817)
    ap.add_argument(
        "--out",
        default=str(
            Path(__file__).resolve().parent.parent
            / "tests"
            / "fixtures"
            / "branch_corpus"
            / "manifest.json"
        ),
    )
    ap.add_argument("--skip-atlas-direct", action="store_true")
    args = ap.parse_args(argv)

    col = Collector()
    print("phase 1: atlas x profiles via find_subversion ...", flush=True)
    phase_atlas_find(col)
    print(f"  runs={col.runs} missing={col.missing()}", flush=True)
    print("phase 2: random graphs via find_subversion ...", flush=True)
    phase_random_find(col, args.random_find, args.seed)
    print(f"  runs={col.runs} missing={col.missing()}", flush=True)
    if not args.skip_atlas_direct:
        print("phase 3: atlas, all bisections, direct procedure calls ...", flush=True)
        phase_atlas_direct(col)
        print(f"  runs={col.runs} missing={col.missing()}", flush=True)
    print("phase 4: random bisections, direct procedure calls ...", flush=True)
    phase_random_direct(col, args.random_direct, args.seed + 1)
    print(f"  runs={col.runs} missing={col.missing()}", flush=True)

    print("\nsite counts:")
    for site in RETURN_SITES:
        print(f"  {col.counts[site]:7d}  {site}")
    if col.failures:
        print(f"\n{len(col.failures)} FAILURES:")
        for f in col.failures[:20]:
            print(" ", f)
        return 1
    missing = col.missing()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    manifest = {
        "sites": {s: col.witnesses[s] for s in RETURN_SITES},
        "counts": col.counts,
        "total_runs": col.runs,
    }
    out.write_text(json.dumps(manifest, indent=1) + "\n")
    print(f"\nwrote {out}")
    if missing:
        print(f"MISSING SITES: {missing}")
        return 1
    print("all return sites covered")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
