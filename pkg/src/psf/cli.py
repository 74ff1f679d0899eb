"""Command-line front end.

Subcommands: ``info`` (enumerative and singularity report), ``check``
(normality verification), ``build`` (replay a build script with its
g-ledger), ``decompose`` (run the decomposition engine and write the
tree), ``verify-identities`` (randomized identity sweep).

Exit codes: 0 ok, 1 check failure, 2 parse error, 3 unknown verdict,
4 ledger mismatch or inadmissible build step, 5 not optimal,
6 irreducible base encountered.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complexes import Complex, ComplexError
from .build import ConstructionError
from .buildscript import ScriptError, load_script, replay
from .decompose import (
    MODES,
    MODE_EDGE,
    DecompositionError,
    ModeMismatch,
    NotOptimal,
    UnknownSingularity,
    decompose,
)
from .enumeration import f_vector, g1, g2, g3, h_vector
from .fileio import ParseError, format_complex, parse_complex
from .identities import run_identity_suite
from .verify import classify_vertices, is_normal_pseudomanifold

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_UNKNOWN_VERDICT = 3
EXIT_LEDGER = 4
EXIT_NOT_OPTIMAL = 5
EXIT_IRREDUCIBLE = 6


def _read_complex(path: str) -> Complex:
    return parse_complex(Path(path).read_text())


def cmd_info(args) -> int:
    k = _read_complex(args.path)
    fv = f_vector(k)
    print(f"dimension: {k.dim}")
    print(f"vertices: {len(k.vertices)}")
    print("f =", " ".join(str(x) for x in fv.entries))
    if k.is_pure:
        hv = h_vector(k)
        print("h =", " ".join(str(x) for x in hv.h))
        if k.dim >= 1:
            print(f"g1 = {g1(k)}")
        if k.dim >= 2:
            print(f"g2 = {g2(k)}")
        if k.dim >= 3:
            print(f"g3 = {g3(k)}")
    report = is_normal_pseudomanifold(k)
    print(f"normal pseudomanifold: {'yes' if report.normal else 'no'}")
    if k.dim in (3, 4) and report.normal:
        verdicts = classify_vertices(k)
        singular = sorted(v for v, s in verdicts.items() if s.status == "singular")
        unknown = sorted(v for v, s in verdicts.items() if s.status == "unknown")
        print("singular:", " ".join(map(str, singular)) if singular else "none")
        if unknown:
            print("unknown:", " ".join(map(str, unknown)))
    return EXIT_OK


def cmd_check(args) -> int:
    k = _read_complex(args.path)
    report = is_normal_pseudomanifold(k)
    if not report.normal:
        print("not a normal pseudomanifold")
        for key, items in report.witnesses.items():
            print(f"  {key}: {items}")
        flags = {
            "pure": report.pure,
            "ridge_degrees": report.ridge_degrees_ok,
            "strongly_connected": report.strongly_connected,
            "links_connected": report.links_connected,
        }
        print("  flags:", ", ".join(f"{k}={v}" for k, v in flags.items()))
        return EXIT_CHECK_FAILED
    print("normal pseudomanifold")
    if args.strict and k.dim in (3, 4):
        verdicts = classify_vertices(k)
        unknown = sorted(v for v, s in verdicts.items() if s.status == "unknown")
        if unknown:
            print("unknown singularity verdicts at:", " ".join(map(str, unknown)))
            return EXIT_UNKNOWN_VERDICT
        singular = sorted(v for v, s in verdicts.items() if s.status == "singular")
        print("singular:", " ".join(map(str, singular)) if singular else "none")
    return EXIT_OK


def cmd_build(args) -> int:
    doc = load_script(Path(args.script).read_text())
    try:
        result = replay(doc)
    except (ConstructionError, ComplexError) as exc:
        print(f"build failed: {exc}")
        return EXIT_LEDGER
    print(f"{'step':>4} {'op':<22} {'g2':>6} {'g3':>6}  delta(g2,g3)  check")
    for row in result.ledger:
        delta = (
            f"({row.delta_g2},{row.delta_g3})" if row.delta_g2 is not None else "-"
        )
        check = "ok" if row.ok else "MISMATCH" if row.checked else "-"
        g2s = "-" if row.g2 is None else str(row.g2)
        g3s = "-" if row.g3 is None else str(row.g3)
        print(f"{row.step:>4} {row.op:<22} {g2s:>6} {g3s:>6}  {delta:<12}  {check}")
    if args.output:
        Path(args.output).write_text(format_complex(result.final))
        print(f"wrote {args.output}")
    if not result.ledger_ok:
        print("g-ledger mismatch")
        return EXIT_LEDGER
    return EXIT_OK


def cmd_decompose(args) -> int:
    k = _read_complex(args.path)
    try:
        tree = decompose(k, args.vertex, mode=args.mode)
    except NotOptimal as exc:
        print(f"not optimal: {exc}")
        return EXIT_NOT_OPTIMAL
    except (UnknownSingularity,) as exc:
        print(f"unknown singularity verdict: {exc}")
        return EXIT_UNKNOWN_VERDICT
    except (ModeMismatch, DecompositionError) as exc:
        print(f"decomposition failed: {exc}")
        return EXIT_CHECK_FAILED
    counters = tree.counters
    m = tree.edge_fold_count
    n = tree.vertex_fold_count
    print(
        "counters:",
        f"edge_folds={m}",
        f"vertex_folds={n}",
        f"connected_sums={counters.get('connected_sums', 0)}",
        f"inverse_subdivisions={counters.get('inverse_subdivisions', 0)}",
    )
    base_g2 = sum(
        g2(Complex(s.facets))
        for s in tree.steps
        if s.kind == "suspension_base" or (s.kind == "leaf" and s.leaf_kind == "irreducible_base")
    )
    print(f"g2 accounting: 6*{m} + 10*{n} + {base_g2} = {6 * m + 10 * n + base_g2}, g2(input) = {g2(k)}")
    if args.output:
        Path(args.output).write_text(json.dumps(tree.to_dict(), indent=2, sort_keys=True) + "\n")
        print(f"wrote {args.output}")
    if counters.get("irreducible"):
        print("irreducible base encountered")
        return EXIT_IRREDUCIBLE
    return EXIT_OK


def cmd_verify_identities(args) -> int:
    report = run_identity_suite(
        scripts=args.seeds, max_ops=args.ops, base_seed=args.base_seed
    )
    for line in report.summary_lines():
        print(line)
    for failure in report.failures:
        print("FAIL:", failure)
    if not report.ok:
        return EXIT_CHECK_FAILED
    print(f"{args.seeds} scripts: all identities exact")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psf",
        description="Construct, verify and decompose normal pseudomanifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="enumerative and singularity report for a facet file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("check", help="verify the normal pseudomanifold conditions")
    p.add_argument("path")
    p.add_argument("--strict", action="store_true", help="require decided singularity verdicts")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("build", help="replay a JSON build script with its g-ledger")
    p.add_argument("script")
    p.add_argument("-o", "--output", help="write the resulting facet file here")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("decompose", help="decompose an optimal normal 4-pseudomanifold")
    p.add_argument("path")
    p.add_argument("--vertex", type=int, required=True, help="tracked singular vertex")
    p.add_argument("--mode", choices=MODES, default=MODE_EDGE)
    p.add_argument("-o", "--output", help="write the decomposition tree JSON here")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("verify-identities", help="randomized identity sweep")
    p.add_argument("--seeds", type=int, default=100, help="number of random scripts")
    p.add_argument("--ops", type=int, default=12, help="operations per script")
    p.add_argument("--base-seed", type=int, default=2024)
    p.set_defaults(fn=cmd_verify_identities)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ScriptError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return EXIT_PARSE
    except ComplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
