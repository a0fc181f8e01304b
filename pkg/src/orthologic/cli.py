"""Command-line entry point: prove, check, encode, ground, datalog, bench."""

from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
import time
import warnings

from orthologic import __version__
from orthologic.core import ATOM, Problem, Sequent, map_leaves
from orthologic.errors import InputError, ResourceError

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("orthologic")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def load_problem(path: str):
    from orthologic.io import parse_problem

    return parse_problem(_read(path))


def prepare(p, merge: bool = False) -> Problem:
    """Ground predicate atoms, drop 0/1, optionally merge axioms."""
    from orthologic.epr import EprProblem, ground
    from orthologic.preprocess import eliminate_bounds, merge_problem

    if isinstance(p, EprProblem):
        p = ground(p)
    p = eliminate_bounds(p)
    if merge:
        p = merge_problem(p)
    return p


def _print_stats(stats, out):
    for k, v in stats.as_dict().items():
        print(f"{k}={v:.6f}" if isinstance(v, float) else f"{k}={v}", file=out)


def cmd_prove(args, out) -> int:
    from orthologic.io import emit_proof
    from orthologic.prover import prove

    p = prepare(load_problem(args.file), args.merge_axioms)
    res = prove(p, engine=args.engine, want_proof=bool(args.proof), max_nodes=args.max_nodes)
    print("PROVABLE" if res else "NOT-PROVABLE", file=out)
    if args.stats:
        _print_stats(res.stats, out)
    if args.oracle:
        from orthologic.oracles import classical_verdict

        v = classical_verdict(p)
        print(f"classical={'holds' if v.holds else 'fails'}", file=out)
        if res and not v.holds:
            print("error: provable goal fails classically", file=sys.stderr)
            return EXIT_INPUT
    if args.proof and res:
        _write(args.proof, emit_proof(res.proof))
    return EXIT_OK if res else EXIT_NO


def _atoms_to_vars(pr):
    """Rename atom leaves of a parsed proof to the propositional names grounding uses."""
    from orthologic.epr import ground_name
    from orthologic.core import Var
    from orthologic.proofkit import Proof, iter_nodes

    def prop(f):
        return map_leaves(f, lambda g: Var(ground_name(g)) if g.kind == ATOM else g)
    done = {}
    for n in iter_nodes(pr):
        done[id(n)] = Proof(
            Sequent((prop(f), s) for f, s in n.conclusion), n.rule,
            tuple(done[id(q)] for q in n.premises),
            prop(n.cut_formula) if n.cut_formula is not None else None)
    return done[id(pr)]


def cmd_check(args, out) -> int:
    from orthologic.io import parse_proof
    from orthologic.preprocess import merge_axioms
    from orthologic.proofkit import find_proof_error, format_path

    pr = _atoms_to_vars(parse_proof(_read(args.proof)))
    p = prepare(load_problem(args.problem))
    if pr.conclusion != p.goal:
        print(f"INVALID: root: conclusion differs from the goal", file=out)
        return EXIT_NO
    err = find_proof_error(pr, p.axioms)
    if err is not None:
        # proofs written by `prove --merge-axioms` use the merged axioms
        merged = merge_axioms(p.axioms)
        if find_proof_error(pr, merged) is None:
            print("VALID (from merged axioms)", file=out)
            return EXIT_OK
        path, msg = err
        print(f"INVALID: {format_path(path)}: {msg}", file=out)
        return EXIT_NO
    print("VALID", file=out)
    return EXIT_OK


def cmd_encode(args, out) -> int:
    from orthologic.encoders import classify, encode_instance
    from orthologic.io import format_problem, parse_dimacs

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        inst = parse_dimacs(_read(args.dimacs))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    flags = classify(inst)
    comments = [f"{inst.num_vars} variables, {len(inst.clauses)} clauses",
                "classes: " + ", ".join(sorted(flags))]
    if flags.witness is not None and len(flags.witness):
        comments.append("horn renaming: " + ", ".join(flags.witness))
    out.write(format_problem(encode_instance(inst), comments))
    return EXIT_OK


def cmd_ground(args, out) -> int:
    from orthologic.epr import EprProblem, ground, ground_bound
    from orthologic.io import format_problem

    p = load_problem(args.file)
    if not isinstance(p, EprProblem):
        out.write(format_problem(p))
        return EXIT_OK
    g = ground(p)
    out.write(format_problem(g, [f"{len(g.axioms)} ground axioms (bound {ground_bound(p)})"]))
    return EXIT_OK


def cmd_datalog(args, out) -> int:
    from orthologic.epr import EprProblem, datalog_solve
    from orthologic.io import parse_formula

    p = load_problem(args.file)
    q = parse_formula(args.query)
    if q.kind != ATOM:
        raise InputError(f"query {args.query!r} is not an atom")
    if not isinstance(p, EprProblem):
        from orthologic.epr import Signature

        p = EprProblem(Signature(), p.axioms, p.goal)
    ok = datalog_solve(p, q, engine=args.engine)
    if args.oracle:
        from orthologic.oracles import datalog_naive

        ref = datalog_naive(p, q)
        print(f"naive={'true' if ref else 'false'}", file=out)
    print("true" if ok else "false", file=out)
    return EXIT_OK if ok else EXIT_NO


def _bench_problems(family: str, n_min: int, n_max: int, seed: int):
    from orthologic.encoders import encode_instance
    from orthologic.generators import chain_problem, random_cnf

    rng = random.Random(seed)
    n = n_min
    while n <= n_max:
        if family == "chain":
            yield n, chain_problem(max(1, n // 4))
        else:
            yield n, encode_instance(random_cnf(rng, n, 2 * n, width=2))
        n *= 2


def cmd_bench(args, out) -> int:
    from orthologic.prover import prove

    w = csv.writer(out, lineterminator="\n")
    w.writerow(["family", "n", "axioms", "visited", "edges", "micros"])
    for n, p in _bench_problems(args.family, args.n_min, args.n_max, args.seed):
        best = None
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            res = prove(p, engine=args.engine, want_proof=False)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        w.writerow([args.family, n, len(p.axioms), res.stats.visitedCount,
                    res.stats.expandedEdges, int(round(best * 1e6))])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthologic", description="Orthologic decision procedures.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def engine(p):
        p.add_argument("--engine", choices=("fixpoint", "backward"), default="fixpoint")

    p = sub.add_parser("prove", help="decide a problem file")
    p.add_argument("file")
    p.add_argument("--proof", metavar="OUT", help="write a proof file when provable")
    engine(p)
    p.add_argument("--merge-axioms", action="store_true")
    p.add_argument("--stats", action="store_true", help="print key=value search counters")
    p.add_argument("--oracle", action="store_true", help="cross-check with the truth-table oracle")
    p.add_argument("--max-nodes", type=int, default=None, help="cap on visited sequents")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check", help="validate a proof file against a problem")
    p.add_argument("proof")
    p.add_argument("problem")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("encode", help="turn DIMACS CNF into a problem document")
    p.add_argument("--dimacs", required=True, metavar="FILE")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("ground", help="print the propositional grounding of a problem")
    p.add_argument("file")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("datalog", help="answer a ground query against a Datalog program")
    p.add_argument("file")
    p.add_argument("--query", required=True, metavar="ATOM")
    engine(p)
    p.add_argument("--oracle", action="store_true", help="also run the naive evaluator")
    p.set_defaults(func=cmd_datalog)

    p = sub.add_parser("bench", help="CSV scaling table")
    p.add_argument("--family", choices=("chain", "cnf"), required=True)
    p.add_argument("--n-max", type=int, required=True, metavar="K")
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    engine(p)
    p.set_defaults(func=cmd_bench)
    return ap


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    if getattr(args, "n_min", 0) is None:
        args.n_min = 64 if args.family == "chain" else 4
    try:
        return args.func(args, out)
    except ResourceError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, OSError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
