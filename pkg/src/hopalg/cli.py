"""Command-line interface.

Subcommands: check, classify, subs, iso, gen, census.  The global
``--machine`` flag switches output to line-oriented ``key=value`` form for
scripting.  Exit codes: 0 success, 1 I/O error, 2 usage error, 3 table
failed the check, 4 tables not isomorphic.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .census import DEFAULT_SAMPLE_SEED, CensusReport, run_census
from .chemgen import enumerate_species, halogen_preset, generate_table
from .core import ClassificationReport, HyperOp, TripleWitness, classify
from .morphisms import find_isomorphism
from .substructures import enumerate_substructures
from .tableio import TableFormatError, parse_table, serialize_table

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3
EXIT_NOT_ISOMORPHIC = 4


def _load_table(path: str) -> HyperOp:
    with open(path, "r", encoding="ascii") as handle:
        return parse_table(handle.read())


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _symbols(op: HyperOp, mask: int) -> str:
    return " ".join(op.universe.symbols_in(mask))


def _report_lines(op: HyperOp, report: ClassificationReport, machine: bool,
                  witnesses: bool) -> list[str]:
    u = op.universe
    if machine:
        lines = [
            f"class={report.class_label}",
            f"hv_group={_bool(report.hv_group)}",
            f"reproduction={_bool(report.reproduction)}",
            f"associative={_bool(report.associative)}",
            f"weakly_associative={_bool(report.weakly_associative)}",
            f"commutative={_bool(report.commutative)}",
        ]
        if not witnesses:
            return lines
        if report.reproduction_witness is not None:
            lines.append(f"witness.reproduction={u.symbols[report.reproduction_witness]}")
        for name, w in (
            ("associativity", report.associativity_witness),
            ("weak_associativity", report.weak_associativity_witness),
        ):
            if w is not None:
                lines += [
                    f"witness.{name}.x={u.symbols[w.x]}",
                    f"witness.{name}.y={u.symbols[w.y]}",
                    f"witness.{name}.z={u.symbols[w.z]}",
                    f"witness.{name}.left={_symbols(op, w.left)}",
                    f"witness.{name}.right={_symbols(op, w.right)}",
                ]
        if report.commutativity_witness is not None:
            x, y = report.commutativity_witness
            lines.append(f"witness.commutativity={u.symbols[x]} {u.symbols[y]}")
        return lines

    def verdict(flag: bool) -> str:
        return "holds" if flag else "fails"

    lines = [
        f"class: {report.class_label}",
        f"hv-group family: {'yes' if report.hv_group else 'no'}",
        f"reproduction: {verdict(report.reproduction)}",
        f"associativity: {verdict(report.associative)}",
        f"weak associativity: {verdict(report.weakly_associative)}",
        f"commutativity: {verdict(report.commutative)}",
    ]
    if not witnesses:
        return lines
    if report.reproduction_witness is not None:
        lines.append(f"  reproduction fails at {u.symbols[report.reproduction_witness]}")
    for label, w in (
        ("associativity", report.associativity_witness),
        ("weak associativity", report.weak_associativity_witness),
    ):
        if w is not None:
            lines.append(
                f"  {label} fails at ({u.symbols[w.x]}, {u.symbols[w.y]}, "
                f"{u.symbols[w.z]}): left {u.format_mask(w.left)}, "
                f"right {u.format_mask(w.right)}"
            )
    if report.commutativity_witness is not None:
        x, y = report.commutativity_witness
        lines.append(f"  commutativity fails at ({u.symbols[x]}, {u.symbols[y]})")
    return lines


def _cmd_check(args: argparse.Namespace) -> int:
    op = _load_table(args.table)
    report = classify(op)
    for line in _report_lines(op, report, args.machine, witnesses=False):
        print(line)
    return EXIT_OK if report.hv_group else EXIT_CHECK_FAILED


def _cmd_classify(args: argparse.Namespace) -> int:
    op = _load_table(args.table)
    report = classify(op)
    for line in _report_lines(op, report, args.machine, witnesses=True):
        print(line)
    return EXIT_OK


def _cmd_subs(args: argparse.Namespace) -> int:
    op = _load_table(args.table)
    records = enumerate_substructures(op)
    if args.machine:
        print(f"count={len(records)}")
        for i, rec in enumerate(records):
            print(f"substructure.{i}.members={_symbols(op, rec.members)}")
            print(f"substructure.{i}.proper={_bool(rec.is_proper)}")
            print(f"substructure.{i}.trivial={_bool(rec.is_trivial)}")
    else:
        for rec in records:
            flag = "proper" if rec.is_proper else "trivial (= H)"
            print(f"{op.universe.format_mask(rec.members)}  {flag}")
    return EXIT_OK


def _cmd_iso(args: argparse.Namespace) -> int:
    a = _load_table(args.table_a)
    b = _load_table(args.table_b)
    r = find_isomorphism(a, b)
    if r is None:
        print("isomorphic=false" if args.machine else "not isomorphic")
        return EXIT_NOT_ISOMORPHIC
    pairs = [
        (a.universe.symbols[i], b.universe.symbols[r(i)])
        for i in range(a.universe.size)
    ]
    if args.machine:
        print("isomorphic=true")
        for src, dst in pairs:
            print(f"map.{src}={dst}")
    else:
        print("isomorphic: " + " ".join(f"{src}->{dst}" for src, dst in pairs))
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.halogen is not None:
        model = halogen_preset(args.halogen)
        comment = f"generated: hydrogen + halogen {model.kinds[1]}"
    else:
        model = enumerate_species((args.kinds[0], args.kinds[1]))
        comment = f"generated: atom kinds {model.kinds[0]} {model.kinds[1]}"
    text = serialize_table(generate_table(model), comments=[comment])
    if args.output:
        with open(args.output, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _census_lines(report: CensusReport, machine: bool) -> list[str]:
    if machine:
        lines = [
            f"order={report.order}",
            f"total_tables={report.total_tables}",
            f"scanned={report.scanned}",
            f"dedup={_bool(report.dedup)}",
            f"workers={report.workers}",
        ]
        if report.sample_size is not None:
            lines.append(f"sample_size={report.sample_size}")
            lines.append(f"sample_seed={report.sample_seed}")
        if report.iso_classes is not None:
            lines.append(f"iso_classes={report.iso_classes}")
        for label, count in report.counts.items():
            lines.append(f"counts.{label.value}={count}")
        lines.append(f"elapsed_seconds={report.elapsed_seconds:.3f}")
        return lines
    lines = [
        f"order: {report.order}",
        f"total tables: {report.total_tables}",
        f"scanned: {report.scanned}",
    ]
    if report.sample_size is not None:
        lines.append(f"sample: {report.sample_size} tables, seed {report.sample_seed}")
    if report.iso_classes is not None:
        lines.append(f"isomorphism classes: {report.iso_classes}")
    for label, count in report.counts.items():
        lines.append(f"{label.value}: {count}")
    lines.append(f"elapsed: {report.elapsed_seconds:.3f} s ({report.workers} worker(s))")
    return lines


def _cmd_census(args: argparse.Namespace) -> int:
    report = run_census(
        args.order,
        dedup=args.dedup,
        workers=args.workers,
        sample=args.sample,
        seed=args.seed,
        progress=args.progress,
    )
    for line in _census_lines(report, args.machine):
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopalg",
        description="Finite hyperstructure toolkit: check axioms, enumerate "
        "substructures, test isomorphism, generate chain-reaction tables, "
        "and run exhaustive censuses.",
    )
    parser.add_argument(
        "--machine",
        action="store_true",
        help="line-oriented key=value output for scripting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a table; exit 3 unless it is an hv-group or hypergroup")
    p.add_argument("table", help="path to a .hop table file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("classify", help="full classification report with witnesses")
    p.add_argument("table", help="path to a .hop table file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("subs", help="list closed substructures")
    p.add_argument("table", help="path to a .hop table file")
    p.set_defaults(func=_cmd_subs)

    p = sub.add_parser("iso", help="search for an isomorphism between two tables")
    p.add_argument("table_a", help="path to the first .hop file")
    p.add_argument("table_b", help="path to the second .hop file")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("gen", help="generate a chain-reaction table")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--kinds", nargs=2, metavar=("A", "B"), help="two atom kind names")
    source.add_argument("--halogen", metavar="NAME", help="hydrogen + halogen preset (F, Cl, Br, I)")
    p.add_argument("-o", "--output", metavar="FILE", help="write the table here instead of stdout")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("census", help="classify all tables of a small order")
    p.add_argument("--order", type=int, required=True, help="table order (full scans up to 3)")
    p.add_argument("--dedup", action="store_true", help="count isomorphism classes (order <= 2)")
    p.add_argument("--sample", type=int, metavar="K", help="classify K sampled tables instead of all")
    p.add_argument("--seed", type=int, default=DEFAULT_SAMPLE_SEED, help="sampling seed")
    p.add_argument("--workers", type=int, default=1, help="parallel workers over the table range")
    p.add_argument("--progress", action="store_true", help="progress lines on stderr")
    p.set_defaults(func=_cmd_census)
    return parser


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except TableFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
