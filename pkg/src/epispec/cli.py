"""Command-line interface: ``epispec solve|translate|ground|gen|verify``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib import resources
from typing import List, Optional, Sequence

from . import __version__
from .core import GELFOND, SEMANTICS, STABLE, SUPPORTED, TWO_VALUED, EpispecError, ResourceLimitError
from .engine import DEFAULT_MAX_MODAL, SearchStats, enumerate_world_views, modal_profile
from .gelfond import DIRECT, DIRECT_MAX_ATOMS, GUESS, VIA_SIGMA, gelfond_world_views, sigma_translate
from .textio import (
    ParseError, SolveReport, UnsafeVariableError, ViewRecord, emit_report, format_program,
    format_source, ground_program, parse_program,
)

EXIT_OK, EXIT_NONE, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


def _read(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(text: str, dialect: Optional[str]):
    return ground_program(parse_program(text, dialect))


def _world_text(w) -> List[str]:
    return sorted(str(x) for x in w)


def _report(program, views, semantics: str, stats: SearchStats) -> SolveReport:
    records = []
    for v in views:
        known, unknown = modal_profile(program, v)
        records.append(ViewRecord(tuple(tuple(_world_text(w)) for w in v.worlds), tuple(known), tuple(unknown)))
    return SolveReport(program.dialect, semantics, tuple(records), stats.as_dict())


def cmd_solve(args) -> int:
    program = _load(_read(args.file), args.dialect)
    stats = SearchStats()
    first = args.enumerate == "first"
    if program.dialect == GELFOND:
        if args.semantics not in (None, SUPPORTED):
            raise UsageError("the Gelfond dialect has a single semantics; drop --semantics "
                             "(it is computed through epistemic supported models)")
        method = VIA_SIGMA
        if args.direct_oracle:
            method = DIRECT if len(program.vocabulary) <= DIRECT_MAX_ATOMS else GUESS
        views = gelfond_world_views(program, method, args.max_modal, first, stats)
        if first:
            views = views[:1]
        semantics = "gelfond"
    else:
        semantics = args.semantics or STABLE
        if args.direct_oracle:
            raise UsageError("--direct-oracle applies to the Gelfond dialect only")
        views = enumerate_world_views(program, semantics, args.max_modal, first, stats)
    if not args.timing:
        stats.ms = 0
    sys.stdout.write(emit_report(_report(program, views, semantics, stats), args.format))
    return EXIT_OK if views else EXIT_NONE


def cmd_translate(args) -> int:
    program = _load(_read(args.file), args.dialect or GELFOND)
    if program.dialect != GELFOND:
        raise UsageError("translate expects a Gelfond-dialect program")
    sys.stdout.write(format_program(sigma_translate(program)))
    return EXIT_OK


def cmd_ground(args) -> int:
    sys.stdout.write(format_program(_load(_read(args.file), args.dialect)))
    return EXIT_OK


def cmd_gen(args) -> int:
    from .bench import graphs, qbf, unique

    rng = random.Random(args.seed)
    if args.kind == "sigma2":
        q = qbf.random_sigma2_instance(rng, args.size, args.size)
        header, text = q.to_json(), format_program(qbf.gen_sigma2_program(q))
    elif args.kind == "sigma3":
        q = qbf.random_sigma3_instance(rng, args.size)
        header, text = q.to_json(), format_program(qbf.gen_sigma3_program(q))
    elif args.kind == "unique":
        f = unique.random_constraint_theory(rng, args.size)
        variant = unique.STABLE_VARIANT if args.semantics == STABLE else unique.CLASSICAL_VARIANT
        header, text = f.to_json(), format_program(unique.gen_unique_model_program(f, variant))
    elif args.kind == "hc":
        g = graphs.random_digraph(rng, args.size, args.density)
        header, text = g.to_json(), format_source(graphs.gen_hc_critical(g))
    else:
        g = graphs.random_digraph(rng, args.size, args.density)
        header = {**g.to_json(), "p": args.p, "k": args.k}
        text = format_source(graphs.gen_extension(g, args.p, args.k))
    sys.stdout.write("% instance: " + json.dumps(header, sort_keys=True) + "\n" + text)
    return EXIT_OK


def corpus_files() -> List[str]:
    root = resources.files("epispec") / "corpus"
    return sorted(str(p) for p in root.iterdir() if p.name.endswith(".elp"))


def cmd_verify(args) -> int:
    from .bench.verify import verify_program

    paths = args.files or corpus_files()
    ok = True
    for path in paths:
        program = _load(_read(path), args.dialect)
        for record in verify_program(program, args.max_modal):
            record["instance"] = {"file": path, **record["instance"]}
            ok &= record["match"]
            sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    return EXIT_OK if ok else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dialect", choices=[TWO_VALUED, GELFOND], default=None,
                        help="input dialect (default: #dialect directive, else lk)")
    common.add_argument("--semantics", choices=list(SEMANTICS), default=None)
    common.add_argument("--enumerate", choices=["all", "first"], default="all")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-modal", type=int, default=DEFAULT_MAX_MODAL, metavar="N",
                        help="refuse programs needing more than 2^N partitions")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--direct-oracle", action="store_true",
                        help="Gelfond dialect: check world views without the translation")
    common.add_argument("--timing", action="store_true", help="report elapsed milliseconds")

    parser = argparse.ArgumentParser(prog="epispec", description="World views of epistemic logic programs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="compute world views")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("translate", parents=[common], help="Gelfond program -> two-valued program")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("ground", parents=[common], help="print the ground program")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("gen", parents=[common], help="generate a benchmark instance")
    p.add_argument("kind", choices=["sigma2", "sigma3", "unique", "hc", "ext"])
    p.add_argument("--size", type=int, default=None,
                   help="block size (sigma2/sigma3), atoms (unique) or vertices (hc/ext)")
    p.add_argument("--density", type=float, default=0.5, help="edge probability for graphs")
    p.add_argument("--p", type=int, default=1, help="ext: maximum number of new edges")
    p.add_argument("--k", type=int, default=1, help="ext: maximum number of critical edges")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="cross-check the solver against oracles")
    p.add_argument("files", nargs="*", help="programs to check (default: bundled corpus)")
    p.set_defaults(func=cmd_verify)
    return parser


_DEFAULT_SIZES = {"sigma2": 3, "sigma3": 2, "unique": 4, "hc": 4, "ext": 3}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "kind", None) and args.size is None:
        args.size = _DEFAULT_SIZES[args.kind]
    try:
        return args.func(args)
    except (ParseError, UnsafeVariableError, UsageError) as e:
        print(f"epispec: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"epispec: resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (EpispecError, OSError, ValueError) as e:
        print(f"epispec: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
