"""Command-line front end.

Subcommands: ``subvert`` (compute a subvertable belief assignment plus swing
vertex), ``simulate`` (run best-response dynamics and emit a TSV trace),
``bisect`` (local-search bisection report), ``oracle`` (brute-force verdicts
at small n), ``reduce`` (generate a hardness instance from a 2P2N-3SAT
formula), and ``verify`` (check a swing certificate and explore schedules).

Exit codes: 0 success, 1 domain errors (all vertices stubborn, certificate
fails, …), 2 usage or file-parse errors, 3 internal invariant violations.
All output is deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import fileio
from .bisection import local_search_k_minimal
from .dynamics import (
    HighestGain,
    LowestId,
    PreferFlipToOne,
    RandomSeeded,
    Scripted,
    check_all_schedules_subvert,
    run_to_equilibrium,
    verify_swing,
)
from .errors import AlgorithmInvariantViolated, PrefGameError
from .game_core import is_stubborn, majority
from .hardness_gen import build_reduction, parse_2p2n_3sat, proper_assignment
from .oracle import (
    DEFAULT_MAX_N,
    exists_subvertable_assignment,
    is_subvertable_assignment,
)
from .subversion import find_subversion


def _bits_str(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def _ids_line(label: str, ids) -> str:
    joined = " ".join(str(i) for i in ids)
    return f"{label} {joined}" if joined else label


def _load_graph_profile(args):
    graph = fileio.parse_graph(Path(args.graph).read_text())
    profile = fileio.parse_stubbornness(Path(args.alpha).read_text())
    if len(profile) != graph.n:
        raise ValueError(
            f"stubbornness file has {len(profile)} entries for {graph.n} vertices"
        )
    return graph, profile


def _seed_side(args, n: int):
    if getattr(args, "seed", None) is None:
        return None
    rng = random.Random(args.seed)
    return sorted(rng.sample(range(n), (n + 1) // 2))


def _parse_script(text: str) -> list[int]:
    ids = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            ids.append(int(line))
        except ValueError as e:
            raise ValueError(f"bad script line {line!r}") from e
    return ids


def cmd_subvert(args) -> int:
    graph, profile = _load_graph_profile(args)
    log: list[str] = []
    result = find_subversion(graph, profile, _seed_side(args, graph.n), log)
    print(f"beliefs {_bits_str(result.beliefs)}")
    print(f"swing {result.swing}")
    print(_ids_line("witness-big-side", result.witness_bisection.s_list()))
    print(f"witness-phi2 {result.witness_bisection.phi2}")
    ok = verify_swing(graph, profile, result.beliefs, result.swing)
    print(f"verify-swing {_bool_str(ok)}")
    for line in log:
        print(f"note {line}")
    if args.out_beliefs:
        Path(args.out_beliefs).write_text(fileio.format_bits(result.beliefs))
    return 0 if ok else 1


def cmd_simulate(args) -> int:
    graph, profile = _load_graph_profile(args)
    beliefs = fileio.parse_bits(Path(args.beliefs).read_text(), graph.n)
    initial = None
    if args.state:
        initial = fileio.parse_bits(Path(args.state).read_text(), graph.n)
    if args.script:
        scheduler = Scripted(_parse_script(Path(args.script).read_text()))
    elif args.scheduler == "lowest-id":
        scheduler = LowestId()
    elif args.scheduler == "highest-gain":
        scheduler = HighestGain()
    elif args.scheduler == "prefer-one":
        scheduler = PreferFlipToOne()
    else:
        scheduler = RandomSeeded(args.seed if args.seed is not None else 0)
    final, trace = run_to_equilibrium(
        graph, profile, beliefs, initial, scheduler, args.max_steps
    )
    sys.stdout.write(fileio.format_trace(trace.as_tuples()))
    print(f"# final {_bits_str(final)}")
    print(f"# stop {trace.stop_reason}")
    if graph.n % 2 == 1:
        print(f"# majority {majority(final)}")
    return 0


def cmd_bisect(args) -> int:
    graph, profile = _load_graph_profile(args)
    bis = local_search_k_minimal(graph, profile, args.k, _seed_side(args, graph.n))
    print(_ids_line("big-side", bis.s_list()))
    print(f"side-vector {_bits_str(int(bis.side(v)) for v in range(graph.n))}")
    print(f"phi2 {bis.phi2}")
    cls = bis.classify()
    print(_ids_line("good-vertices", cls.good_vertices))
    print(_ids_line("obstructions", cls.obstructions))
    print(f"is-good {_bool_str(cls.is_good)}")
    return 0


def cmd_oracle(args) -> int:
    graph, profile = _load_graph_profile(args)
    if args.check_characterization:
        witness = exists_subvertable_assignment(
            graph, profile, exact_zeros=args.exact_zeros, max_n=args.max_n
        )
        nonstubborn = any(
            not is_stubborn(graph, profile, v) for v in range(graph.n)
        )
        print(f"nonstubborn-exists {_bool_str(nonstubborn)}")
        print(f"witness {_bits_str(witness) if witness is not None else 'none'}")
        print(f"characterization {_bool_str((witness is not None) == nonstubborn)}")
        return 0
    if args.beliefs:
        beliefs = fileio.parse_bits(Path(args.beliefs).read_text(), graph.n)
        verdict = is_subvertable_assignment(graph, profile, beliefs, max_n=args.max_n)
        print(f"subvertable {_bool_str(verdict)}")
        return 0
    raise ValueError("oracle requires --beliefs or --check-characterization")


def cmd_reduce(args) -> int:
    formula = parse_2p2n_3sat(Path(args.cnf).read_text())
    instance = build_reduction(formula, Fraction(args.epsilon), args.N)
    var_truth = None
    if args.assignment:
        bits = fileio.parse_bits(Path(args.assignment).read_text(), instance.V)
        var_truth = [bool(b) for b in bits]
    beliefs = proper_assignment(instance, var_truth)
    out = args.out
    Path(f"{out}.graph").write_text(fileio.format_graph(instance.graph))
    Path(f"{out}.alpha").write_text(fileio.format_stubbornness(instance.profile))
    Path(f"{out}.beliefs").write_text(fileio.format_bits(beliefs))
    Path(f"{out}.roles").write_text(fileio.format_roles(instance.roles))
    print(f"n {instance.n}")
    print(f"m {instance.graph.m}")
    print(f"variables {instance.V}")
    print(f"clauses {instance.C}")
    print(f"N {instance.N}")
    print(f"epsilon {instance.epsilon}")
    print(f"ones {sum(beliefs)}")
    print(f"files {out}.graph {out}.alpha {out}.beliefs {out}.roles")
    return 0


def cmd_verify(args) -> int:
    graph, profile = _load_graph_profile(args)
    beliefs = fileio.parse_bits(Path(args.beliefs).read_text(), graph.n)
    ok = verify_swing(graph, profile, beliefs, args.swing)
    print(f"verify-swing {_bool_str(ok)}")
    if not ok:
        return 1
    report = check_all_schedules_subvert(
        graph,
        profile,
        beliefs,
        args.swing,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed if args.seed is not None else 0,
        max_n=args.max_n,
    )
    print(f"all-schedules {_bool_str(report.subverts_always)}")
    print(f"min-ones {report.min_ones_after_swing}")
    print(f"terminals {report.terminals_seen}")
    return 0 if report.subverts_always else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefgames",
        description="Discrete preference games: subversion search, dynamics,"
        " bisection machinery, brute-force oracle, hardness instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subvert", help="compute beliefs + swing vertex")
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="randomize the local-search seed side")
    p.add_argument("--out-beliefs", default=None,
                   help="also write the beliefs to this file")
    p.set_defaults(func=cmd_subvert)

    p = sub.add_parser("simulate", help="run best-response dynamics")
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beliefs", required=True)
    p.add_argument("--state", default=None, help="initial opinions (default: truthful)")
    p.add_argument("--scheduler", default="lowest-id",
                   choices=["lowest-id", "highest-gain", "prefer-one", "random"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--script", default=None, help="file with one vertex id per line")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bisect", help="local-search bisection report")
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bisect)

    p = sub.add_parser("oracle", help="brute-force verdicts at small n")
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beliefs", default=None)
    p.add_argument("--check-characterization", action="store_true")
    p.add_argument("--exact-zeros", action="store_true",
                   help="enumerate only assignments with exactly (n+1)/2 zeros")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="generate a hardness instance from CNF")
    p.add_argument("--cnf", required=True)
    p.add_argument("--epsilon", required=True, help="rational like 1/2")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--assignment", default=None,
                   help="variable truth bits for the proper assignment")
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check a swing certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beliefs", required=True)
    p.add_argument("--swing", type=int, required=True)
    p.add_argument("--mode", default="exhaustive", choices=["exhaustive", "sampled"])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-n", type=int, default=11)
    p.set_defaults(func=cmd_verify)

    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except AlgorithmInvariantViolated as e:
        print(f"error: invariant violated: {e}", file=sys.stderr)
        return 3
    except PrefGameError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
