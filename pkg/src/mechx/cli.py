"""Command-line interface.

    mechx compute @nao
    mechx compare @bellagio @cat
    mechx dataset-list
    mechx plot --figure 3 --out-csv fig3.csv --out-svg fig3.svg
    mechx validate myrobot.mechx
    mechx aem-run incrementer.aem --max-steps 1000 --trace

Platform arguments are either paths to .mechx files or "@name"
references into the bundled dataset.  Results go to standard output,
errors to standard error.  Exit codes: 0 success, 1 usage error,
2 parse/validation error, 3 budget exhausted (aem-run --strict-halt).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import aemachine, figures, specfile
from .capacity import CountMode, analyze, compare
from .model import NonIntegralSpan, Platform

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BUDGET = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through our own
    # exception so usage problems map to exit code 1 instead.
    def error(self, message):
        raise _UsageError(message)


def _load_platform(ref: str) -> Platform:
    if ref.startswith("@"):
        try:
            return specfile.dataset_lookup(ref[1:]).platform
        except KeyError as exc:
            raise specfile.SpecFileError(0, str(exc)) from exc
    try:
        with open(ref, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise specfile.SpecFileError(0, f"cannot read {ref!r}: {exc}") from exc
    return specfile.parse_platform(text).platform


def _dof_total(platform: Platform) -> int:
    return sum(g.multiplicity for g in platform.groups)


def cmd_compute(args) -> int:
    platform = _load_platform(args.platform)
    if args.exact:
        mode = CountMode.EXACT
    elif args.log_space:
        mode = CountMode.LOG_SPACE
    else:
        mode = CountMode.BOTH
    report = analyze(platform, mode=mode)

    if args.json:
        payload = {
            "platform": report.name,
            "kind": platform.kind,
            "mode": mode.value,
            "k_bits_mechanical": report.bits_mechanical,
            "k_bits_mechanical_rounded": report.bits_mechanical_rounded,
            "log10_c_mechanical": report.count_mechanical.log10,
            "c_digits_mechanical": report.count_mechanical.digit_count,
        }
        if not args.mechanical_only:
            payload.update(
                {
                    "k_bits_all": report.bits_all,
                    "k_bits_all_rounded": report.bits_all_rounded,
                    "log10_c_all": report.count_all.log10,
                    "c_digits_all": report.count_all.digit_count,
                }
            )
        if mode is CountMode.EXACT:
            # Exact decimal strings can run to thousands of digits; lift
            # the interpreter's conversion cap before rendering them.
            digits = report.count_all.digit_count + 10
            if hasattr(sys, "set_int_max_str_digits"):
                sys.set_int_max_str_digits(max(10000, digits))
            payload["c_exact_mechanical"] = str(report.count_mechanical.exact)
            if not args.mechanical_only:
                payload["c_exact_all"] = str(report.count_all.exact)
        if report.computational is not None:
            payload["transistors"] = platform.processor.transistors
            payload["computational_bits"] = report.computational.bits
            payload["computational_config_digits"] = report.computational.config_digits
        print(json.dumps(payload, sort_keys=True))
        return EXIT_OK

    print(f"platform: {report.name}")
    print(f"kind: {platform.kind}")
    print(f"degrees of freedom: {_dof_total(platform)} ({len(platform.groups)} groups)")
    if not args.mechanical_only:
        c = report.count_all
        print(f"C(all) = {c.sci()} ({c.digit_count} digits)")
        print(f"K(all) = {report.bits_all_rounded} bits (rounded)")
        print(f"K(all) = {report.bits_all!r} bits")
    c = report.count_mechanical
    print(f"C(mechanical) = {c.sci()} ({c.digit_count} digits)")
    print(f"K(mechanical) = {report.bits_mechanical_rounded} bits (rounded)")
    print(f"K(mechanical) = {report.bits_mechanical!r} bits")
    if report.computational is not None:
        p = platform.processor
        name = p.name if p.name else "(unnamed)"
        print(f"processor: {name}, {p.transistors} transistors")
        print(
            f"computational capacity = {report.computational.bits!r} bits "
            f"({report.computational.config_digits} digits as a configuration count)"
        )
    return EXIT_OK


def cmd_compare(args) -> int:
    left = _load_platform(args.left)
    right = _load_platform(args.right)
    rep = compare(left, right)
    if args.json:
        payload = {
            "left": rep.left.name,
            "right": rep.right.name,
            "k_bits_left": rep.left.bits_mechanical,
            "k_bits_right": rep.right.bits_mechanical,
            "bits_difference": rep.bits_difference,
            "log10_ratio": rep.log10_ratio,
            "bits_ratio": rep.bits_ratio,
            "larger": rep.larger,
        }
        print(json.dumps(payload, sort_keys=True))
        return EXIT_OK
    print(f"left: {rep.left.name}, K(mechanical) = {rep.left.bits_mechanical!r} bits")
    print(
        f"right: {rep.right.name}, K(mechanical) = {rep.right.bits_mechanical!r} bits"
    )
    print(f"difference (left - right) = {rep.bits_difference!r} bits")
    print(f"log10 configuration ratio = {rep.log10_ratio!r}")
    print(f"bits ratio = {rep.bits_ratio!r}")
    print(f"larger: {rep.larger if rep.larger else '(equal)'}")
    return EXIT_OK


def cmd_dataset_list(args) -> int:
    for stem, doc in zip(specfile.DATASET_MANIFEST, specfile.load_dataset()):
        p = doc.platform
        print(f"@{stem:24s} {p.kind:10s} {p.name}")
    return EXIT_OK


def cmd_plot(args) -> int:
    dataset = [doc.platform for doc in specfile.load_dataset()]
    figure_id = figures.FIGURE_IDS[args.figure - 1]
    diagnostics: list = []
    bundle = figures.build_figure(
        dataset,
        figure_id,
        width=args.width,
        height=args.height,
        diagnostics=diagnostics,
    )
    for diag in diagnostics:
        print(str(diag), file=sys.stderr)
    with open(args.out_csv, "w", encoding="utf-8", newline="") as fh:
        fh.write(bundle.csv)
    with open(args.out_svg, "w", encoding="utf-8", newline="") as fh:
        fh.write(bundle.svg)
    print(f"{figure_id}: {len(bundle.points)} points -> {args.out_csv}, {args.out_svg}")
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file!r}: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        doc = specfile.parse_platform(text)
    except specfile.SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    diags = specfile.validate(doc)
    for d in diags:
        print(str(d))
    errors = [d for d in diags if d.severity is specfile.Severity.ERROR]
    if errors:
        return EXIT_DATA
    print(f"ok: {doc.platform.name!r} parsed with {len(diags)} warnings")
    return EXIT_OK


def cmd_aem_run(args) -> int:
    try:
        mf = aemachine.load_machine(args.file)
    except OSError as exc:
        print(f"error: cannot read {args.file!r}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except aemachine.MachineFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    result = aemachine.run(
        mf.machine, mf.tape, max_steps=args.max_steps, trace=args.trace
    )
    sys.stdout.write(aemachine.format_run(result))
    if (
        args.strict_halt
        and result.outcome is aemachine.Outcome.BUDGET_EXHAUSTED
    ):
        print(
            f"error: budget of {args.max_steps} steps exhausted before halting",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mechx",
        description="Configuration counting and capacity comparison for "
        "mechanical platforms.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("compute", help="capacity report for one platform")
    p.add_argument("platform", help=".mechx file path or @dataset-name")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact big-int arithmetic only")
    mode.add_argument("--log-space", action="store_true", help="log-space arithmetic only")
    p.add_argument("--mechanical-only", action="store_true")
    p.add_argument("--json", action="store_true", help="one-line JSON output")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("compare", help="compare two platforms")
    p.add_argument("left", help=".mechx file path or @dataset-name")
    p.add_argument("right", help=".mechx file path or @dataset-name")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("dataset-list", help="list bundled platforms")
    p.set_defaults(func=cmd_dataset_list)

    p = sub.add_parser("plot", help="emit CSV and SVG for a canned figure")
    p.add_argument("--figure", type=int, choices=(1, 2, 3, 4, 5), required=True)
    p.add_argument("--out-csv", required=True)
    p.add_argument("--out-svg", required=True)
    p.add_argument("--width", type=float, default=640)
    p.add_argument("--height", type=float, default=480)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("validate", help="lint a .mechx file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("aem-run", help="run a machine description")
    p.add_argument("file", help=".aem machine file")
    p.add_argument("--max-steps", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument(
        "--strict-halt",
        action="store_true",
        help="exit 3 if the step budget runs out before the machine halts",
    )
    p.set_defaults(func=cmd_aem_run)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonIntegralSpan as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except specfile.SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except specfile.DatasetCorrupt as exc:
        print(f"error: bundled dataset corrupt: {exc}", file=sys.stderr)
        return EXIT_DATA
    except aemachine.MachineFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
