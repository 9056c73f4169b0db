from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .bfile import BFileError, TermCache, read_bfile, write_bfile
from .certificates import (
    DEFAULT_XIA,
    R_RATIO_BOUND,
    XiaParameters,
    assemble_theorem_report,
    check_interlacing,
    check_xia,
    verify_inductive_step,
)
from .checks import (
    CheckRangeError,
    check_log_shape,
    check_ratio_log_concave,
    check_ratio_monotone,
    check_root_log_concave,
    check_root_monotone,
    explore_infinite_log_concavity,
    l_operator,
    limit_enclosure,
    root_ratio_trend,
)
from .definitions import DefinitionError, load_custom_definition
from .quadratic import rational_to_decimal
from .report import CertificateReport, CheckResult, render_check, render_report
from .sequences import (
    BUILTIN_DEFS,
    SequenceDef,
    SequenceError,
    TermStore,
    build_terms,
    ratios,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2

CACHE_ENV_VAR = "SEQCERT_CACHE_DIR"


class UsageError(ValueError):
    pass


def _default_cache_root() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "seqcert"


def _sequence_def(args: argparse.Namespace) -> SequenceDef:
    if getattr(args, "definition", None):
        return load_custom_definition(args.definition)
    return BUILTIN_DEFS[args.sequence]


def _get_store(args: argparse.Namespace, upto: int, method: str = "recurrence") -> TermStore:
    seq = _sequence_def(args)
    cache: Optional[TermCache] = None
    if not getattr(args, "no_cache", False) and method == "recurrence":
        cache = TermCache(getattr(args, "cache_root", None) or _default_cache_root())
        cached = cache.load(seq, upto)
        if cached is not None:
            return cached
    store = build_terms(seq, upto, method=method)
    if cache is not None:
        try:
            cache.save(store, seq)
        except OSError as exc:
            print(f"warning: cache write failed: {exc}", file=sys.stderr)
    return store


def _emit(text: str, args: argparse.Namespace) -> None:
    output = getattr(args, "output", None)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _check_exit(result: CheckResult, args: argparse.Namespace) -> int:
    _emit(render_check(result, args.format), args)
    return EXIT_OK if result.verdict.holds else EXIT_REFUTED


def _report_exit(report: CertificateReport, args: argparse.Namespace) -> int:
    _emit(render_report(report, args.format), args)
    return EXIT_OK if report.certified else EXIT_REFUTED


def _require_range(lo: int, hi: int) -> None:
    if lo > hi:
        raise UsageError(f"empty range: --from {lo} exceeds --to {hi}")


def _cmd_terms(args: argparse.Namespace) -> int:
    seq = _sequence_def(args)
    store = _get_store(args, args.upto, method=args.method)
    if args.export:
        write_bfile(store, args.export)
    shown = min(len(store), 10)
    lines = [f"{seq.name}: terms {store.first_index}..{store.last_index} "
             f"(method={args.method})"]
    for n in range(store.first_index, store.first_index + shown):
        lines.append(f"  {n} {store.term(n)}")
    if shown < len(store):
        lines.append(f"  … {len(store) - shown} more")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _cmd_ratios(args: argparse.Namespace) -> int:
    _require_range(args.lo, args.hi)
    store = _get_store(args, args.hi + 1)
    values = ratios(store, args.lo, args.hi)
    lines = []
    for n, r in zip(range(args.lo, args.hi + 1), values):
        lines.append(f"r_{n} = {r} ≈ {rational_to_decimal(r, args.digits)}")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _cmd_table1(args: argparse.Namespace) -> int:
    store = _get_store(args, 10)
    bound = R_RATIO_BOUND
    rows = []
    for n in range(3, 10):
        r_n = Fraction(store.term(n + 1), store.term(n))
        rows.append((n, bound.eval(n + 1).to_decimal(args.digits),
                     rational_to_decimal(r_n, args.digits),
                     bound.eval(n).to_decimal(args.digits)))
    if args.format == "csv":
        lines = ["n,b_next,ratio,b_n"]
        lines += [f"{n},{up},{mid},{low}" for n, up, mid, low in rows]
    elif args.format == "markdown":
        lines = ["| n | b(n+1) | r_n | b(n) |", "| --- | --- | --- | --- |"]
        lines += [f"| {n} | {up} | {mid} | {low} |" for n, up, mid, low in rows]
    else:
        lines = ["n | b(n+1) | r_n | b(n)"]
        lines += [f"{n} | {up} | {mid} | {low}" for n, up, mid, low in rows]
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    _require_range(args.lo, args.hi)
    kind = args.check_kind
    if kind == "log-shape":
        store = _get_store(args, args.hi + 1)
        result = check_log_shape(store, args.lo, args.hi, args.mode, args.strict)
    elif kind == "ratio-monotone":
        store = _get_store(args, args.hi + 1)
        result = check_ratio_monotone(store, args.lo, args.hi, args.direction, args.strict)
    elif kind == "root-monotone":
        store = _get_store(args, args.hi + 1)
        result = check_root_monotone(store, args.lo, args.hi, args.direction, args.strict)
    elif kind == "root-logconcave":
        store = _get_store(args, args.hi + 1)
        result = check_root_log_concave(store, args.lo, args.hi, args.strict)
    elif kind == "root-ratio-trend":
        store = _get_store(args, args.hi + 1)
        rows, result = root_ratio_trend(store, args.lo, args.hi, args.digits)
        table = "\n".join(f"n={n}: {text}" for n, text, _ in rows)
        _emit(table + "\n", args)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown check {kind!r}")
    return _check_exit(result, args)


def _cmd_certify(args: argparse.Namespace) -> int:
    kind = args.certify_kind
    if kind == "interlacing":
        _require_range(args.lo, args.hi)
        store = _get_store(args, args.hi + 1)
        return _report_exit(check_interlacing(store, R_RATIO_BOUND, args.lo, args.hi), args)
    if kind == "inductive-step":
        return _report_exit(verify_inductive_step(R_RATIO_BOUND), args)
    if kind == "xia":
        params = XiaParameters(bound=R_RATIO_BOUND, k0=Fraction(args.k0), n0=args.n0)
        store = _get_store(args, args.horizon + 1)
        return _report_exit(check_xia(store, params, args.horizon), args)
    if kind == "theorem":
        if args.horizon < 12:
            raise UsageError("theorem certification needs --horizon >= 12 "
                             "(the r_11 witness)")
        seq = _sequence_def(args)
        if seq.name != "R":
            raise UsageError("the composed theorem certificate applies to builtin R")
        store = _get_store(args, args.horizon + 1)
        report = assemble_theorem_report(seq, store, horizon=args.horizon)
        return _report_exit(report, args)
    raise UsageError(f"unknown certificate {kind!r}")  # pragma: no cover


def _cmd_conjectures(args: argparse.Namespace) -> int:
    _require_range(args.lo, args.hi)
    if args.depth < 0:
        raise UsageError("--depth must be nonnegative")
    upto = max(args.hi + 1, args.ratio_to + 2)
    store = _get_store(args, upto)
    lines = []
    ratio_check = check_ratio_log_concave(store, args.ratio_from, args.ratio_to)
    lines.append("evidence: quotient sequence log-concavity "
                 f"(three-point indices {args.ratio_from}..{args.ratio_to})")
    lines.append(render_check(ratio_check, "plain").rstrip())
    base = l_operator(store)
    width = args.hi - args.lo + 1
    for convention in ("raw", "abs"):
        ledger = explore_infinite_log_concavity(base, args.lo, width, args.depth,
                                                convention)
        lines.append(f"repeated-operator ledger ({convention} convention; {ledger.note}):")
        for entry in ledger.entries:
            status = "all >= 0" if entry.all_nonnegative else \
                f"{entry.negatives} negative (first at n={entry.first_negative})"
            strictness = ", strictly positive" if entry.strict else ""
            lines.append(f"  depth {entry.depth}: window [{entry.lo}, {entry.hi}], "
                         f"{status}{strictness}")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if ratio_check.verdict.holds else EXIT_REFUTED


def _cmd_bfile(args: argparse.Namespace) -> int:
    if args.bfile_kind == "export":
        store = _get_store(args, args.upto)
        if args.lo is not None:
            store = store.window(args.lo, args.upto)
        write_bfile(store, args.path)
        _emit(f"wrote {len(store)} terms to {args.path}\n", args)
        return EXIT_OK
    store = read_bfile(args.path)
    _emit(f"read {len(store)} terms, indices {store.first_index}..{store.last_index}\n",
          args)
    return EXIT_OK


def _add_sequence_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sequence", choices=sorted(BUILTIN_DEFS), default="R",
                        help="builtin sequence (default R)")
    parser.add_argument("--definition", metavar="PATH",
                        help="JSON definition file overriding --sequence")
    parser.add_argument("--cache-root", metavar="DIR",
                        help=f"term cache directory (default ${CACHE_ENV_VAR} "
                             "or ~/.cache/seqcert)")
    parser.add_argument("--no-cache", action="store_true",
                        help="never read or write the term cache")
    parser.add_argument("--format", choices=("plain", "markdown", "csv"),
                        default="plain", help="report rendering (default plain)")
    parser.add_argument("--output", metavar="PATH", help="write output to a file")


def _range_flags(parser: argparse.ArgumentParser, lo_default: int, hi_default: int) -> None:
    parser.add_argument("--from", dest="lo", type=int, default=lo_default,
                        help=f"first index (default {lo_default})")
    parser.add_argument("--to", dest="hi", type=int, default=hi_default,
                        help=f"last index (default {hi_default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqcert",
        description="Exact generation and log-behavior certification of "
                    "binomial-sum integer sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_terms = sub.add_parser("terms", help="generate terms, optionally cross-checking "
                                           "summation against the recurrence")
    _add_sequence_flags(p_terms)
    p_terms.add_argument("--upto", type=int, default=50)
    p_terms.add_argument("--method", choices=("summation", "recurrence", "both"),
                         default="both")
    p_terms.add_argument("--export", metavar="PATH", help="write a b-file")
    p_terms.set_defaults(func=_cmd_terms)

    p_ratios = sub.add_parser("ratios", help="exact consecutive quotients with decimals")
    _add_sequence_flags(p_ratios)
    _range_flags(p_ratios, 1, 20)
    p_ratios.add_argument("--digits", type=int, default=6)
    p_ratios.set_defaults(func=_cmd_ratios)

    p_table = sub.add_parser("table1", help="bound/ratio/bound table for n=3..9")
    _add_sequence_flags(p_table)
    p_table.add_argument("--digits", type=int, default=5)
    p_table.set_defaults(func=_cmd_table1)

    p_check = sub.add_parser("check", help="exact log-behavior checks")
    check_sub = p_check.add_subparsers(dest="check_kind", required=True)

    c_shape = check_sub.add_parser("log-shape", help="z(n-1)·z(n+1) vs z(n)²")
    _add_sequence_flags(c_shape)
    _range_flags(c_shape, 4, 200)
    c_shape.add_argument("--mode", choices=("convex", "concave"), default="convex")
    c_shape.add_argument("--no-strict", dest="strict", action="store_false")
    c_shape.set_defaults(func=_cmd_check)

    c_ratio = check_sub.add_parser("ratio-monotone",
                                   help="monotone consecutive quotients on a window")
    _add_sequence_flags(c_ratio)
    _range_flags(c_ratio, 3, 200)
    c_ratio.add_argument("--direction", choices=("increasing", "decreasing"),
                         default="increasing")
    c_ratio.add_argument("--no-strict", dest="strict", action="store_false")
    c_ratio.set_defaults(func=_cmd_check)

    c_root = check_sub.add_parser("root-monotone",
                                  help="monotone n-th roots via exact power comparison")
    _add_sequence_flags(c_root)
    _range_flags(c_root, 1, 100)
    c_root.add_argument("--direction", choices=("increasing", "decreasing"),
                        default="increasing")
    c_root.add_argument("--no-strict", dest="strict", action="store_false")
    c_root.set_defaults(func=_cmd_check)

    c_rlc = check_sub.add_parser(
        "root-logconcave",
        help="three-point log-concavity of n-th roots; --from/--to give the "
             "indices n at which y(n-1)·y(n+1) is compared with y(n)²")
    _add_sequence_flags(c_rlc)
    _range_flags(c_rlc, 6, 60)
    c_rlc.add_argument("--no-strict", dest="strict", action="store_false")
    c_rlc.set_defaults(func=_cmd_check)

    c_trend = check_sub.add_parser("root-ratio-trend",
                                   help="decimal table of root ratios, decreasing check")
    _add_sequence_flags(c_trend)
    _range_flags(c_trend, 5, 100)
    c_trend.add_argument("--digits", type=int, default=8)
    c_trend.set_defaults(func=_cmd_check)

    p_certify = sub.add_parser("certify", help="exact certificates")
    certify_sub = p_certify.add_subparsers(dest="certify_kind", required=True)

    ct_inter = certify_sub.add_parser("interlacing",
                                      help="b(n) < r_n < b(n+1) on a range")
    _add_sequence_flags(ct_inter)
    _range_flags(ct_inter, 3, 8)
    ct_inter.set_defaults(func=_cmd_certify)

    ct_step = certify_sub.add_parser("inductive-step",
                                     help="rational-function identities and sign "
                                          "certificates of the induction")
    _add_sequence_flags(ct_step)
    ct_step.set_defaults(func=_cmd_certify)

    ct_xia = certify_sub.add_parser("xia", help="root-log-concavity criterion")
    _add_sequence_flags(ct_xia)
    ct_xia.add_argument("--k0", type=int, default=4)
    ct_xia.add_argument("--n0", type=int, default=9)
    ct_xia.add_argument("--horizon", type=int, default=200)
    ct_xia.set_defaults(func=_cmd_certify)

    ct_thm = certify_sub.add_parser("theorem",
                                    help="the composed ratio/root log-behavior ledger")
    _add_sequence_flags(ct_thm)
    ct_thm.add_argument("--horizon", type=int, default=200)
    ct_thm.set_defaults(func=_cmd_certify)

    p_conj = sub.add_parser("conjectures",
                            help="desk-scale evidence: quotient log-concavity and "
                                 "repeated-operator sign ledgers")
    _add_sequence_flags(p_conj)
    _range_flags(p_conj, 6, 106)
    p_conj.add_argument("--depth", type=int, default=5)
    p_conj.add_argument("--ratio-from", dest="ratio_from", type=int, default=5)
    p_conj.add_argument("--ratio-to", dest="ratio_to", type=int, default=199)
    p_conj.set_defaults(func=_cmd_conjectures)

    p_bfile = sub.add_parser("bfile", help="b-file import/export")
    bfile_sub = p_bfile.add_subparsers(dest="bfile_kind", required=True)
    bf_export = bfile_sub.add_parser("export")
    _add_sequence_flags(bf_export)
    bf_export.add_argument("--path", required=True)
    bf_export.add_argument("--upto", type=int, default=50)
    bf_export.add_argument("--from", dest="lo", type=int, default=None,
                           help="first exported index (default: whole store)")
    bf_export.set_defaults(func=_cmd_bfile)
    bf_import = bfile_sub.add_parser("import")
    _add_sequence_flags(bf_import)
    bf_import.add_argument("--path", required=True)
    bf_import.set_defaults(func=_cmd_bfile)

    return parser


def cli_dispatch(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, CheckRangeError, SequenceError, BFileError,
            DefinitionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
