"""Command-line entry point: ``relrep <subcommand> ...``.

Exit codes: 0 success, 1 validation failure, 2 parse error, 3 budget or
size/depth cap, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import io
from .algebra import validate_jsl, validate_residuated_semigroup
from .completion import SAMPLE_SEED, check_quantic_nucleus
from .enumeration import DEFAULT_SIZE_CAP, enumerate_algebras
from .errors import MalformedInput, RelrepError
from .games.extract import saturate_and_extract_rep
from .games.formulas import emit_rho, eval_formula, to_text
from .games.network import PRUNE_LEVELS
from .games.solver import DEFAULT_DEPTH_CAP, solve_game
from .relational import represent, verify_representation

log = logging.getLogger("relrep")


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _print_report(report, names=None):
    print(f"status: {'ok' if report.ok else 'FAILED'}")
    for law, witness in report.violations:
        shown = [names[w] if names and isinstance(w, int) and w < len(names) else w for w in witness]
        print(f"  {law}: {tuple(shown)}")
    for key in sorted(report.diagnostics):
        print(f"  diagnostic {key}: {str(report.diagnostics[key]).lower()}")


def cmd_validate(args):
    af = io.parse_algebra(_read(args.file))
    if af.kind == "rs":
        report = validate_residuated_semigroup(af.algebra)
        nucleus = check_quantic_nucleus(af.algebra, seed=args.seed)
        report.diagnostics["quantic_nucleus"] = nucleus.is_nucleus
        report.diagnostics["nucleus_check_exhaustive"] = nucleus.exhaustive
    else:
        report = validate_jsl(af.algebra)
    print(f"kind: {af.kind}  size: {af.algebra.size}")
    _print_report(report, af.names)
    return 0 if report.ok else 1


def _require_rs(af):
    if af.kind != "rs":
        raise MalformedInput("this command needs a residuated semigroup (kind 'rs')")


def _require_jsl(af):
    if af.kind != "jsl":
        raise MalformedInput("this command needs a join semilattice-ordered semigroup (kind 'jsl')")


def cmd_represent(args):
    af = io.parse_algebra(_read(args.file))
    _require_rs(af)
    rep = represent(af.algebra, minimize=args.min_generators, names=af.names)
    _write(args.output, io.serialize_representation(rep, af.names))
    return 0


def cmd_verify(args):
    af = io.parse_algebra(_read(args.algebra))
    _require_rs(af)
    rep = io.parse_representation(_read(args.rep), af)
    report = verify_representation(af.algebra, rep)
    print(f"base size: {rep.base.size}")
    _print_report(report, af.names)
    return 0 if report.ok else 1


def _parse_goal(text, af):
    parts = text.split(",")
    if len(parts) != 2:
        raise MalformedInput("--goal expects A,B")
    return tuple(af.index(p.strip()) for p in parts)


def cmd_game(args):
    af = io.parse_algebra(_read(args.file))
    _require_jsl(af)
    alg = af.algebra
    if args.goal:
        goal = _parse_goal(args.goal, af)
        verdicts = {goal: solve_game(alg, args.rounds, goal, prune=args.prune,
                                     depth_cap=args.depth_cap)}
    else:
        verdicts = solve_game(alg, args.rounds, prune=args.prune, depth_cap=args.depth_cap)
    if args.certificates:
        _write(args.certificates, io.dumps(io.verdicts_to_doc(af, args.rounds, verdicts)))
    _write(None, io.dumps(io.verdicts_to_doc(af, args.rounds, verdicts, certificates=False)))
    return 0


def cmd_axioms(args):
    if args.rounds < 0:
        raise MalformedInput("--rounds must be non-negative")
    lines = [f"rho_{n}: {to_text(emit_rho(n))}\n" for n in range(args.rounds + 1)]
    _write(args.output, "".join(lines))
    return 0


def cmd_eval_axiom(args):
    af = io.parse_algebra(_read(args.file))
    _require_jsl(af)
    if args.rounds < 0:
        raise MalformedInput("--rounds must be non-negative")
    value = eval_formula(emit_rho(args.rounds), af.algebra)
    print(f"rho_{args.rounds}: {str(value).lower()}")
    return 0


def cmd_enumerate(args):
    algebras = enumerate_algebras(args.kind, args.size, args.modulo_iso, cap=args.size_cap)
    if args.output:
        os.makedirs(args.output, exist_ok=True)
    count = 0
    for i, alg in enumerate(algebras):
        af = io.wrap(alg)
        if args.output:
            path = os.path.join(args.output, f"{args.kind}{args.size}_{i:05d}.json")
            _write(path, io.serialize_algebra(af))
        else:
            sys.stdout.write(json.dumps(io.algebra_to_doc(af), sort_keys=True) + "\n")
        count += 1
    log.info("wrote %d algebras", count)
    if args.output:
        print(f"{count} algebras written to {args.output}")
    return 0


def cmd_extract_rep(args):
    af = io.parse_algebra(_read(args.file))
    _require_jsl(af)
    rep, report = saturate_and_extract_rep(af.algebra, args.nodes, args.rounds,
                                           lookahead=args.lookahead)
    _write(args.output, io.serialize_representation(rep, af.names))
    out = sys.stdout if args.output else sys.stderr
    print(f"extraction: {report.status}", file=out)
    for run in report.runs:
        goal = "-" if run.goal is None else f"{af.names[run.goal[0]]},{af.names[run.goal[1]]}"
        state = "complete" if run.complete else f"incomplete ({run.note})"
        print(f"  goal {goal}: {run.network.nodes} nodes, {run.rounds} rounds, {state}", file=out)
    for law, witness in report.validation.violations:
        print(f"  {law}: {witness}", file=out)
    return 0 if report.status != "FAILED" else 1


def build_parser():
    p = argparse.ArgumentParser(prog="relrep", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an algebra file against its axioms")
    s.add_argument("file")
    s.add_argument("--seed", type=int, default=SAMPLE_SEED,
                   help="seed for the sampled nucleus check on carriers above 4")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("represent", help="relational representation of a residuated semigroup")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--min-generators", action="store_true")
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("verify", help="check a representation file against an algebra")
    s.add_argument("algebra")
    s.add_argument("rep")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("game", help="solve the bounded representability game")
    s.add_argument("file")
    s.add_argument("--rounds", type=int, required=True)
    s.add_argument("--goal")
    s.add_argument("--certificates")
    s.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    s.add_argument("--prune", choices=PRUNE_LEVELS, default="dominance")
    s.set_defaults(func=cmd_game)

    s = sub.add_parser("axioms", help="print rho_0 .. rho_N")
    s.add_argument("--rounds", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("eval-axiom", help="truth value of rho_N in an algebra")
    s.add_argument("file")
    s.add_argument("--rounds", type=int, required=True)
    s.set_defaults(func=cmd_eval_axiom)

    s = sub.add_parser("enumerate", help="write every small algebra of a kind")
    s.add_argument("--kind", choices=("rs", "jsl"), required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--modulo-iso", action="store_true")
    s.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("extract-rep", help="bounded representation candidate from game play")
    s.add_argument("file")
    s.add_argument("--nodes", type=int, required=True)
    s.add_argument("--rounds", type=int, required=True)
    s.add_argument("--lookahead", type=int, default=2)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_extract_rep)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except RelrepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RecursionError:
        print("error: recursion limit reached", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
