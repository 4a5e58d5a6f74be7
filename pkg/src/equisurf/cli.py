"""Command-line front end.

Subcommands: eval, classify, normalize, orbits, oracle-check, atlas.
Exit codes are a contract: 0 ok, 2 parse error, 3 surgery undefined,
4 state budget exceeded, 5 oracle mismatch, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .calculus import SurgeryError, evaluate
from .families import ClassifyError, atlas, classify
from .invariants import InvariantRecord
from .normalize import normalize
from .words import WordParseError, parse_word

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SURGERY = 3
EXIT_BUDGET = 4
EXIT_ORACLE = 5


def _print_json(data) -> None:
    print(json.dumps(data, sort_keys=True))


def cmd_eval(args) -> int:
    word = parse_word(args.word, args.p)
    result = evaluate(word)
    if args.table:
        rec = result.record
        print(f"p={rec.p} orientable={rec.orientable} beta={rec.beta} "
              f"fixed_points={rec.fixed_points} rotations={list(rec.rotations or [])}")
    else:
        _print_json(result.record.to_json_dict())
    return EXIT_OK


def cmd_classify(args) -> int:
    rec = InvariantRecord.from_json(args.record)
    result = classify(rec)
    data = {
        "families": [{"kind": f.kind, "params": list(f.params)} for f in result.families],
        "unique": result.unique is not None,
    }
    if args.table:
        for f in result.families:
            print(f)
    else:
        _print_json(data)
    return EXIT_OK


def cmd_normalize(args) -> int:
    word = parse_word(args.word, args.p)
    result = normalize(word)
    data = {
        "families": [{"kind": f.kind, "params": list(f.params)} for f in result.families],
        "record": result.record.to_json_dict(),
    }
    if args.table:
        for f in result.families:
            print(f)
    else:
        _print_json(data)
    return EXIT_OK


def cmd_orbits(args) -> int:
    from .orbits import BudgetExceededError, orbit_count, parse_model

    model = parse_model(args.model)
    try:
        report = orbit_count(model, args.p, budget=args.budget, backend=args.backend)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    if args.table:
        print(f"model={report.model} p={report.p} rank={report.rank} "
              f"nonzero_orbits={report.nonzero_orbit_count}")
        for rep, size in zip(report.representatives, report.orbit_sizes):
            print(f"  orbit of {list(rep)}: {size} vectors")
    else:
        _print_json(report.to_json_dict())
    if args.expect is not None and report.nonzero_orbit_count != args.expect:
        print(
            f"error: expected {args.expect} nonzero orbits, found {report.nonzero_orbit_count}",
            file=sys.stderr,
        )
        return 1
    return EXIT_OK


def cmd_atlas(args) -> int:
    rows = atlas(args.p, args.beta_max)
    if args.table:
        print(f"{'family':<22}{'beta':>6}{'F':>4}  rotations (ambiguous rows share (beta, F))")
        for row in rows:
            flag = " *" if row.ambiguous else ""
            print(f"{str(row.family):<22}{row.beta:>6}{row.fixed_points:>4}  "
                  f"{list(row.rotations)}{flag}")
    else:
        _print_json([
            {
                "family": {"kind": r.family.kind, "params": list(r.family.params)},
                "beta": r.beta,
                "fixed_points": r.fixed_points,
                "rotations": list(r.rotations),
                "ambiguous": r.ambiguous,
            }
            for r in rows
        ])
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    from .oracle.checks import run_oracle_check

    failures, summary = run_oracle_check(args.scope, args.p, seed=args.seed, words=args.words)
    for line in summary:
        print(line)
    if failures:
        for f in failures:
            print(f"MISMATCH: {f}", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="equisurf")
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(sp, p_required=True):
        sp.add_argument("-p", type=int, required=p_required, help="odd prime order of the symmetry")
        sp.add_argument("--json", dest="table", action="store_false", default=False,
                        help="machine output (default)")
        sp.add_argument("--table", dest="table", action="store_true", help="human output")

    sp = sub.add_parser("eval", help="evaluate a surgery word to its invariant record")
    add_common(sp)
    sp.add_argument("word")
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("classify", help="classify an invariant record (JSON) to its family")
    sp.add_argument("record", help='e.g. {"p":3,"orientable":false,"beta":8,"fixed_points":3,"rotations":null}')
    sp.add_argument("--json", dest="table", action="store_false", default=False)
    sp.add_argument("--table", dest="table", action="store_true")
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("normalize", help="normalize a surgery word to its canonical family")
    add_common(sp)
    sp.add_argument("word")
    sp.set_defaults(fn=cmd_normalize)

    sp = sub.add_parser("orbits", help="count orbits of the mapping-class action on (Z/p)^n")
    add_common(sp)
    sp.add_argument("model", help="closed-nonorientable:r | closed-orientable:g | boundary:c")
    sp.add_argument("--expect", type=int, default=None, help="exit nonzero unless the count matches")
    sp.add_argument("--budget", type=int, default=None, help="state budget (default 1e8; env EQUISURF_BUDGET)")
    sp.add_argument("--backend", choices=["numba", "numpy"], default=None)
    sp.set_defaults(fn=cmd_orbits)

    sp = sub.add_parser("atlas", help="enumerate every family with beta <= beta-max")
    add_common(sp)
    sp.add_argument("--beta-max", type=int, required=True)
    sp.set_defaults(fn=cmd_atlas)

    sp = sub.add_parser("oracle-check", help="cross-check gluing schemes against the calculus")
    add_common(sp)
    sp.add_argument("scope", choices=["examples", "surgeries", "ding", "all"])
    sp.add_argument("--seed", type=int, default=0, help="seed for the randomized word sweep")
    sp.add_argument("--words", type=int, default=40, help="random words per prime in scope=all")
    sp.set_defaults(fn=cmd_oracle_check)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except WordParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SurgeryError as e:
        print(f"surgery undefined: {e}", file=sys.stderr)
        return EXIT_SURGERY
    except ClassifyError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
