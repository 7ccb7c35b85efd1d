#!/usr/bin/env python3
"""Hand-constructed graphs that drive the repair cascade through its rare exits.

Each design below pins an exact walk through compute_good_bisection: the seed
split is 3-minimal by construction, the pair loop fails in a controlled way,
and the classification at every later stage funnels the run into one target
return site.  The script verifies every design end to end (seed minimality,
zero invariant violations, expected sites reached) and merges the survivors
into tests/fixtures/branch_corpus/manifest.json.

Run:  python3 scripts/construct_branch_witnesses.py [--check-only]
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from prefgames.bisection import Bisection, _find_improving_swap  # noqa: E402
from prefgames.dynamics import check_all_schedules_subvert, verify_swing  # noqa: E402
from prefgames.errors import AlgorithmInvariantViolated  # noqa: E402
from prefgames.game_core import Graph, StubbornnessProfile, is_stubborn  # noqa: E402
from prefgames.subversion import find_subversion  # noqa: E402

MANIFEST = ROOT / "tests" / "fixtures" / "branch_corpus" / "manifest.json"


def build(design):
    n = design["n"]
    g = Graph(n, [tuple(e) for e in design["edges"]])
    prof = StubbornnessProfile([Fraction(a) for a in design["alphas"]])
    return g, prof


def probe(design):
    """Print the seed-split facts the walk designs rely on."""
    g, prof = build(design)
    bis = Bisection(g, prof, design["big"])
    a = prof.a
    print(f"--- probe {design['name']} (n={g.n}) phi2={bis.phi2}")
    for v in range(g.n):
        side = "S " if bis.side(v) else "S'"
        stub = "stub" if is_stubborn(g, prof, v) else "flex"
        print(
            f"  {v:>2} {side} a={a[v]} d={len(g.adj[v])} "
            f"def={bis.deficiency(v):+d} rank={bis.rank(v)} {stub}"
        )
    flex = [v for v in range(g.n) if not is_stubborn(g, prof, v)]
    low = min(bis.rank(v) for v in flex)
    m_set = [v for v in flex if bis.rank(v) == low]
    print(f"  low={low} m_set={m_set}")


def run_design(design, verbose=False):
    g, prof = build(design)
    big = design["big"]
    bis = Bisection(g, prof, big)
    move = _find_improving_swap(bis, 3)
    if move is not None:
        delta = bis.delta_phi2_for_swap(*move)
        return False, f"seed not 3-minimal: swap {move} improves phi2 by {delta}"
    log: list[str] = []
    try:
        res = find_subversion(g, prof, seed_side=big, log=log)
    except AlgorithmInvariantViolated as e:
        return False, f"AIV [{e.args[0]}] {e.args[1] if len(e.args) > 1 else ''} | log={log}"
    except Exception as e:  # noqa: BLE001 - diagnostic path
        return False, f"{type(e).__name__}: {e} | log={log}"
    head = f"minimal split big={sorted(big)}"
    if not log or not log[0].startswith(head):
        return False, f"seed did not survive local search: {log[:1]}"
    sites = [line.removeprefix("return ") for line in log if line.startswith("return ")]
    want = set(design["expect"])
    if not want <= set(sites):
        return False, f"sites {sites} missing {sorted(want - set(sites))}"
    if sum(res.beliefs) != (g.n - 1) // 2:
        return False, f"beliefs are not a one-seat zero majority: {res.beliefs}"
    if not verify_swing(g, prof, res.beliefs, res.swing):
        return False, f"swing certificate failed for vertex {res.swing}"
    rep = check_all_schedules_subvert(
        g, prof, res.beliefs, res.swing, mode="sampled", samples=25, seed=7
    )
    if not rep.subverts_always or rep.min_ones_after_swing < (g.n + 1) // 2:
        return False, f"sampled schedules broke the flipped majority: {rep}"
    if verbose:
        print(f"  log: {log}")
    return True, sites


# ---------------------------------------------------------------------------
# level-1 walks (minimum rank 1): the swap partner sits one unit deep
# ---------------------------------------------------------------------------

V5 = {
    "name": "lower-rank-pair",
    "n": 13,
    "big": list(range(7)),
    "alphas": ["2/3", "1/3", "1/3", "1/3", "2/3", "2/3", "1/3",
               "9/10", "2/3", "9/10", "9/10", "9/10", "9/10"],
    "edges": [(0, 2), (0, 3), (1, 3), (1, 4), (1, 11), (1, 12), (2, 3),
              (2, 10), (2, 12), (3, 7), (3, 8), (3, 9), (4, 5), (4, 6),
              (4, 8), (4, 9), (4, 11), (5, 8), (6, 8), (7, 8), (8, 10)],
    "expect": ["big-side-lower-rank-pair"],
}

V7 = {
    "name": "lower-rank-obstruction",
    "n": 13,
    "big": list(range(7)),
    "alphas": ["2/3", "1/3", "1/3", "1/3", "2/3", "1/3", "1/3",
               "9/10", "2/3", "9/10", "9/10", "9/10", "9/10"],
    "edges": [(0, 2), (0, 3), (1, 3), (1, 4), (1, 11), (1, 12), (2, 5),
              (2, 10), (2, 12), (3, 8), (3, 9), (4, 6), (4, 8), (4, 11),
              (5, 10), (6, 8), (7, 8)],
    "expect": ["big-side-lower-rank-obstruction"],
}

# ---------------------------------------------------------------------------
# level-2 family (minimum rank 2, n=19): ids 0-9 big, 10-18 small.
#   0,1   anchor-pads  (pair targets of the loop, degree-3 holders)
#   2,3,4 partner-pads (host the swap partner's big-side edges)
#   5,6   deep-pads    (host the second obstruction's big-side edges)
#   7     X1  flex hub whose loop attempts blame 8/9
#   8     y   the seed obstruction the cascade revolves around
#   9     X2  flex hub blamed alongside y / later the deep obstruction
#   10,11 decoy smalls soaking the first rebalance, 12 the swap partner
#   13+   high-tolerance ballast
# ---------------------------------------------------------------------------

ZETA = {
    "name": "second-partner-pair",
    "n": 19,
    "big": list(range(10)),
    "alphas": ["3/4", "3/4", "3/4", "3/4", "3/4", "4/5", "4/5",
               "2/3", "2/3", "2/3",
               "4/5", "4/5", "4/5",
               "9/10", "9/10", "9/10", "9/10", "9/10", "9/10"],
    "edges": [
        # anchor-pads: carry y, X2 and the first decoy
        (0, 8), (0, 9), (0, 10),
        (1, 8), (1, 9), (1, 10),
        # partner-pads around X1 / deep-pads pairing
        (2, 5), (2, 7), (2, 12),
        (3, 6), (3, 7), (3, 12),
        (4, 5), (4, 6), (4, 12),
        # degree-4 stubborn holders for the second decoy
        (5, 6), (5, 11),
        (6, 11),
        # X1: blamed by y's and X2's attempts
        (7, 10), (7, 11),
        # y and X2 small sides
        (8, 13), (8, 14),
        (9, 15), (9, 16),
        # small-side partner structure
        (10, 11), (10, 12),
        (11, 12),
    ],
    "expect": ["big-side-second-partner-pair"],
}


def _variant(base, name, expect, *, add=(), drop=(), alphas=None):
    edges = [tuple(e) for e in base["edges"]]
    for e in drop:
        edges.remove(tuple(sorted(e)))
    for e in add:
        edges.append(tuple(e))
    out = dict(base)
    out["name"] = name
    out["expect"] = expect
    out["edges"] = edges
    if alphas:
        out = dict(out, alphas=list(alphas))
    return out


# gamma: cut the decoy-decoy edge so the rebalance around y comes back clean;
# re-anchor each decoy's deficiency with a ballast mate.
GAMMA = _variant(
    ZETA, "reswap-pair", ["big-side-reswap-pair"],
    drop=[(10, 11)],
    add=[(10, 14), (11, 15)],
)

# delta: give X2 a hold on the first decoy so the partner pair lands clean.
DELTA = _variant(
    ZETA, "partner-pair", ["big-side-partner-pair"],
    drop=[(7, 10), (9, 15)],
    add=[(9, 10), (7, 17)],
)

# handoff-A: y adjacent to the deep obstruction X2 -> the guarantee case,
# finishing in the small-side pair loop after the handoff.
HANDOFF_A = _variant(
    ZETA, "handoff-pair-loop",
    ["big-side-handoff", "small-side-pair-loop"],
    drop=[(8, 13), (9, 15)],
    add=[(8, 9), (8, 15), (9, 13), (9, 17), (13, 14)],
)

# handoff-B: same entry, but the first decoy is left stranded so the
# recursion must use the partner route anchored at X1.
HANDOFF_B = _variant(
    ZETA, "handoff-partner-pair",
    ["big-side-handoff", "small-side-partner-pair"],
    drop=[(8, 13), (9, 15), (0, 10), (1, 10)],
    add=[(8, 9), (8, 15), (9, 13), (9, 17), (4, 10), (10, 16), (13, 14)],
)

# ---------------------------------------------------------------------------
# level-2, n=21: the second partner pair comes back dirty (final obstruction)
# ---------------------------------------------------------------------------

ETA = {
    "name": "final-obstruction",
    "n": 21,
    "big": list(range(11)),
    "alphas": ["4/5", "3/4", "3/4", "3/4", "3/4", "4/5", "4/5",
               "2/3", "2/3", "2/3", "2/3",
               "4/5", "4/5", "4/5",
               "9/10", "9/10", "9/10", "9/10", "9/10", "9/10", "9/10"],
    "edges": [
        # anchor-pads; 0 is degree-4 and also holds the first decoy
        (0, 8), (0, 9), (0, 10), (0, 11),
        (1, 8), (1, 9), (1, 10),
        # partner-pads and deep-pads
        (2, 5), (2, 7), (2, 13),
        (3, 6), (3, 7), (3, 13),
        (4, 5), (4, 6), (4, 11),
        (5, 6), (5, 12),
        (6, 12),
        # X1 carries all three critical smalls
        (7, 8), (7, 11), (7, 12), (7, 13),
        # y: degree-8 hub
        (8, 10), (8, 14), (8, 15), (8, 16), (8, 17),
        # X2 and X3
        (9, 18), (9, 19),
        (10, 18), (10, 19), (10, 20),
        # small-side partner structure
        (11, 12), (11, 13),
        (12, 13),
        # ballast tail
        (7, 20),
    ],
    "expect": ["big-side-final-obstruction"],
}

# ---------------------------------------------------------------------------
# stubborn big side (n=13): near-universal low-tolerance pads, repair must
# walk the obstruction itself across.
# ---------------------------------------------------------------------------


def _stubborn_big():
    n = 13
    pads = range(7)
    non_edges = {
        0: {8, 11}, 1: {8, 11}, 2: {7, 9}, 3: {7, 9},
        4: {7, 12}, 5: {7, 12}, 6: {7, 12},
    }
    edges = set()
    for i in pads:
        for j in pads:
            if i < j:
                edges.add((i, j))
        for s in range(7, 13):
            if s not in non_edges[i]:
                edges.add((i, s))
    for u, v in [(7, 8), (7, 10), (8, 9), (8, 10), (8, 11),
                 (9, 10), (9, 11), (9, 12)]:
        edges.add((u, v))
    return {
        "name": "stubborn-big-side",
        "n": n,
        "big": list(pads),
        "alphas": ["2/3"] * 10 + ["9/10"] * 3,
        "edges": sorted(edges),
        "expect": ["small-side-stubborn-big"],
    }


STUBBORN = _stubborn_big()

# ---------------------------------------------------------------------------
# level-3 (minimum rank 3, n=27): the negative-deficiency witness after the
# swap.  w sits one rank above the minimum, tied to the swap partner.
# ---------------------------------------------------------------------------

NEGW = {
    "name": "negative-witness",
    "n": 27,
    "big": list(range(14)),
    "alphas": ["3/4", "3/4", "3/4",          # 0-2 fodder-pads (hold y, X2)
               "3/4", "3/4", "3/4",          # 3-5 partner-pads (hold X1)
               "4/5", "4/5",                  # 6-7 witness-pads px, py
               "3/4", "3/4",                  # 8-9 twin-pads p7, p8
               "4/5", "4/5", "4/5",          # 10-12 X1, y, X2
               "4/5",                          # 13 w: the witness
               "9/10", "9/10", "9/10",       # 14-16 fodder smalls
               "6/7", "6/7",                  # 17 swap partner y1, 18 twin x
               "9/10", "9/10", "9/10", "9/10",  # 19-22 ballast
               "9/10", "9/10", "9/10", "9/10"],  # 23-26 ballast
    "edges": [
        # fodder-pads: carry y (11), X2 (12), and one fodder small each
        (0, 11), (0, 12), (0, 14),
        (1, 11), (1, 12), (1, 15),
        (2, 11), (2, 12), (2, 16),
        # partner-pads: carry X1 (10); small slots feed y1/x
        (3, 10), (3, 4), (3, 17),
        (4, 10), (4, 3), (4, 18),
        (5, 10), (5, 6), (5, 17),
        # witness-pads: hold w (13) and feed y1/x
        (6, 13), (6, 7), (6, 18),
        (7, 13), (7, 17), (7, 19),
        # twin-pads
        (8, 9), (8, 12), (8, 18),
        (9, 18), (9, 20),
        # X1: partner-pads + ballast smalls
        (10, 21), (10, 22), (10, 23),
        # y: fodder-pads + ballast smalls
        (11, 24), (11, 25), (11, 26),
        # X2: fodder-pads + pad 8 + shared ballast
        (12, 24), (12, 25),
        # w: deficiency -3, tied to y1 and x
        (13, 17), (13, 18), (13, 19), (13, 20), (13, 21),
        # y1 (17): mates 14-16, x; x (18): mates 14, 15
        (14, 17), (15, 17), (16, 17),
        (14, 18), (15, 18), (17, 18),
    ],
    "expect": ["big-side-negative-witness"],
}

DESIGNS = [V5, V7, ZETA, GAMMA, DELTA, HANDOFF_A, HANDOFF_B, STUBBORN, ETA, NEGW]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check-only", action="store_true")
    ap.add_argument("--probe", help="print seed facts for one design")
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()

    if args.probe:
        for d in DESIGNS:
            if d["name"] == args.probe:
                probe(d)
                return 0
        print(f"no design named {args.probe}")
        return 2

    results = {}
    ok_all = True
    for d in DESIGNS:
        ok, info = run_design(d, verbose=args.verbose)
        mark = "ok " if ok else "FAIL"
        print(f"[{mark}] {d['name']:<24} -> {info}")
        results[d["name"]] = (ok, info, d)
        ok_all = ok_all and ok

    if not ok_all:
        return 1
    if args.check_only:
        return 0

    data = json.loads(MANIFEST.read_text())
    sites = data["sites"]
    added = 0
    for name, (ok, reached, d) in results.items():
        entry = {
            "kind": "find",
            "n": d["n"],
            "edges": [list(e) for e in sorted(tuple(sorted(e)) for e in d["edges"])],
            "alphas": list(d["alphas"]),
            "seed_side": sorted(d["big"]),
            "note": f"constructed:{name}",
        }
        for site in reached:
            bucket = sites.setdefault(site, [])
            if entry not in bucket:
                bucket.append(entry)
                added += 1
    data["counts"] = {k: len(v) for k, v in sorted(sites.items())}
    MANIFEST.write_text(json.dumps(data, indent=1) + "\n")
    print(f"merged {added} entries; manifest now covers {len(sites)} sites")
    return 0


if __name__ == "__main__":
    sys.exit(main())
