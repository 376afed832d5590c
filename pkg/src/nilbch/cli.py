"""Command-line front end.

Subcommands compute and print series, compare sources, run the identity
suite and emit machine-readable artifacts.  All regular output goes to
stdout, diagnostics to stderr.  Exit codes: 0 success (all PASS for check),
1 at least one FAIL verdict, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import NilbchError
from .freelie import default_names, hall_basis, mono_str
from .series import (
    bch_classical,
    bch_paper,
    log_derivative_coeffs,
    series_compare,
    zassenhaus_classical,
    zassenhaus_paper,
)
from .weilcheck import CheckParams, run_suite


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _bch_series(source: str, order: int):
    if source == "classical":
        return bch_classical(order)
    if source == "paper7":
        return bch_paper(order, "sec7")
    if source == "paper8":
        return bch_paper(order, "sec8")
    raise NilbchError(f"unknown BCH source {source!r}")


def _zassenhaus_series(source: str, order: int, form: str):
    if source == "classical":
        return zassenhaus_classical(order)
    if source == "paper":
        return zassenhaus_paper(order, form)
    if source in ("paper-a", "paper-b"):
        return zassenhaus_paper(order, source[-1])
    raise NilbchError(f"unknown Zassenhaus source {source!r}")


def _cmd_bch(args) -> int:
    series = _bch_series(args.source, args.order)
    if args.format == "json":
        _emit(_json_dumps(series.to_json_obj()), args.output)
    else:
        lines = [
            f"deg{n}: {series.component(n)}" for n in range(1, args.order + 1)
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_zassenhaus(args) -> int:
    series = _zassenhaus_series(args.source, args.order, args.form)
    if args.format == "json":
        _emit(_json_dumps(series.to_json_obj()), args.output)
    else:
        lines = [f"C{n}: {series.component(n)}" for n in range(2, args.order + 1)]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_compare(args) -> int:
    if args.what == "bch":
        left = _bch_series(args.a, args.order)
        right = _bch_series(args.b, args.order)
    else:
        left = _zassenhaus_series(args.a, args.order, "a")
        right = _zassenhaus_series(args.b, args.order, "a")
    diff = series_compare(left, right, args.order)
    if args.format == "json":
        obj = {
            "what": args.what,
            "order": args.order,
            "a": args.a,
            "b": args.b,
            "difference": diff.to_json_terms(),
        }
        _emit(_json_dumps(obj), args.output)
    else:
        _emit(f"{diff}\n", args.output)
    return 0


def _cmd_check(args) -> int:
    pattern = "*" if args.all else args.id
    if pattern is None:
        sys.stderr.write("check: provide --id PATTERN or --all\n")
        return 2
    params = CheckParams(trunc=args.trunc, dim=args.dim, seed=args.seed)
    reports, errors = run_suite(pattern, args.model, params)
    for identity_id, message in errors:
        sys.stderr.write(f"{identity_id}: {message}\n")
    if not reports and not errors:
        sys.stderr.write(f"check: no identity matches {pattern!r}\n")
        return 2
    if args.format == "json":
        payload = [r.to_json_obj(include_elapsed=args.timings) for r in reports]
        _emit(_json_dumps(payload), args.output)
    else:
        lines = []
        for report in reports:
            line = f"{report.id:<16} {report.model:<6} {report.verdict}"
            if report.witness is not None and "lead" in report.witness:
                line += f"  lead: {report.witness['lead']}"
            lines.append(line)
        passed = sum(1 for r in reports if r.verdict == "PASS")
        lines.append(f"passed {passed}/{len(reports)}")
        _emit("\n".join(lines) + "\n", args.output)
    if errors:
        return 2
    return 0 if all(r.verdict == "PASS" for r in reports) else 1


def _cmd_hall(args) -> int:
    names = default_names(args.gens)
    basis = hall_basis(args.gens, args.degree)
    if args.format == "json":
        obj = {
            "gens": args.gens,
            "degree": args.degree,
            "monomials": [mono_str(m, names) for m in basis],
        }
        _emit(_json_dumps(obj), args.output)
    else:
        _emit("\n".join(mono_str(m, names) for m in basis) + "\n", args.output)
    return 0


def _cmd_logderiv(args) -> int:
    coeffs = log_derivative_coeffs(args.side, args.order)
    if args.format == "json":
        obj = {
            "side": args.side,
            "order": args.order,
            "coeffs": [str(c) for c in coeffs],
        }
        _emit(_json_dumps(obj), args.output)
    else:
        lines = [f"p={p}: {c}" for p, c in enumerate(coeffs)]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", default=None, help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilbch",
        description="Exact BCH and Zassenhaus series, with a mechanical identity checker.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bch = sub.add_parser("bch", help="print a BCH exponent, per degree")
    p_bch.add_argument("--order", type=int, required=True)
    p_bch.add_argument(
        "--source", choices=("classical", "paper7", "paper8"), required=True
    )
    _add_output_flags(p_bch)
    p_bch.set_defaults(func=_cmd_bch)

    p_zass = sub.add_parser("zassenhaus", help="print Zassenhaus factor exponents")
    p_zass.add_argument("--order", type=int, required=True)
    p_zass.add_argument("--source", choices=("classical", "paper"), required=True)
    p_zass.add_argument("--form", choices=("a", "b"), default="a")
    _add_output_flags(p_zass)
    p_zass.set_defaults(func=_cmd_zassenhaus)

    p_cmp = sub.add_parser("compare", help="difference of two sources at one degree")
    p_cmp.add_argument("--what", choices=("bch", "zassenhaus"), required=True)
    p_cmp.add_argument("--order", type=int, required=True)
    p_cmp.add_argument("--a", required=True, metavar="SRC")
    p_cmp.add_argument("--b", required=True, metavar="SRC")
    _add_output_flags(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_check = sub.add_parser("check", help="run identity checks")
    p_check.add_argument("--id", default=None, help="identity id or fnmatch pattern")
    p_check.add_argument("--all", action="store_true", help="run the whole catalog")
    p_check.add_argument("--model", choices=("free", "matrix"), default="free")
    p_check.add_argument(
        "--trunc", type=int, default=None,
        help="free-model truncation; defaults to the minimum each identity needs",
    )
    p_check.add_argument("--dim", type=int, default=CheckParams().dim)
    p_check.add_argument("--seed", type=int, default=CheckParams().seed)
    p_check.add_argument(
        "--timings", action="store_true", help="include elapsed_ms in JSON reports"
    )
    _add_output_flags(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_hall = sub.add_parser("hall", help="print a Hall (Lyndon) basis layer")
    p_hall.add_argument("--gens", type=int, required=True)
    p_hall.add_argument("--degree", type=int, required=True)
    _add_output_flags(p_hall)
    p_hall.set_defaults(func=_cmd_hall)

    p_ld = sub.add_parser(
        "logderiv", help="coefficients of the exp logarithmic derivative"
    )
    p_ld.add_argument("--side", choices=("left", "right"), required=True)
    p_ld.add_argument("--order", type=int, required=True)
    _add_output_flags(p_ld)
    p_ld.set_defaults(func=_cmd_logderiv)

    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NilbchError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
