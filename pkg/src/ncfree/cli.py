"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 invariant violation, 4 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import freeprob as fp
from .errors import DomainError, InvariantError
from .series import NcSeries, OneVarSeries, onevar_mul
from .verify import SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_VERIFY = 0, 2, 3, 4
DECIMAL_PLACES = 12


class InputError(Exception):
    pass


def _load(path: str | None) -> dict:
    if path is None:
        raise InputError("missing input file (--in)")
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _distribution(path: str | None, args: argparse.Namespace) -> fp.Distribution:
    d = fp.Distribution.from_json(_load(path))
    if args.k is not None and args.k != d.k:
        raise InputError(f"{path} has k={d.k} but --k {args.k} was given")
    if args.degree is not None:
        d = d.truncate(args.degree)
    return d


def _series(path: str | None, args: argparse.Namespace) -> NcSeries:
    r = NcSeries.from_json(_load(path))
    if args.k is not None and args.k != r.k:
        raise InputError(f"{path} has k={r.k} but --k {args.k} was given")
    if args.degree is not None:
        r = r.truncate(args.degree)
    return r


def _decimal(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 50
        q = Decimal(x.numerator) / Decimal(x.denominator)
        return str(q.quantize(Decimal(1).scaleb(-DECIMAL_PLACES)))


def _text_rows(data: dict, decimal: bool) -> list[tuple[str, str]]:
    rows = []
    for key in ("coeffs", "moments"):
        for e in data.get(key, []):
            v = e["value"]
            if decimal:
                v = _decimal(Fraction(v))
            rows.append((" ".join(map(str, e["word"])) or "()", v))
    return rows


def _render_text(data: dict, decimal: bool) -> str:
    if "suite" in data:
        lines = [f"suite {data['suite']}"]
        width = max((len(c["name"]) for c in data["checks"]), default=0)
        for c in data["checks"]:
            mark = "PASS" if c["pass"] else "FAIL"
            lines.append(f"{mark}  {c['name']:<{width}}  {c['anchor']}  {c['detail']}".rstrip())
        return "\n".join(lines) + "\n"
    head = f"k={data['k']} degree={data['degree']}"
    rows = _text_rows(data, decimal)
    width = max((len(w) for w, _ in rows), default=0)
    body = [f"{w:<{width}}  {v}" for w, v in rows]
    for c in data.get("checks", []):
        body.append(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}  {c['detail']}".rstrip())
    return "\n".join([head, *body]) + "\n"


def _emit(data: dict, args: argparse.Namespace) -> None:
    if args.format == "json":
        text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_text(data, args.decimal)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_cumulants(args: argparse.Namespace) -> int:
    _emit(_distribution(args.inp, args).r_transform.to_json(), args)
    return EXIT_OK


def cmd_moments(args: argparse.Namespace) -> int:
    _emit(fp.r_to_moments(_series(args.inp, args)).to_json(), args)
    return EXIT_OK


def cmd_boxtimes(args: argparse.Namespace) -> int:
    a = _distribution(args.inp, args)
    b = _distribution(args.in2, args)
    try:
        out = fp.boxtimes(a, b)
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    data = out.to_json()
    if out.k == 1 and a.in_group and b.in_group:
        lhs = fp.s_transform(out)
        rhs = onevar_mul(fp.s_transform(a), fp.s_transform(b))
        ok = lhs == rhs
        data["checks"] = [{"name": "S-transform is multiplicative", "pass": ok, "detail": f"through degree {lhs.degree}"}]
        if not ok:
            raise InvariantError("S-transform of the product differs from the product of S-transforms")
    _emit(data, args)
    return EXIT_OK


def cmd_ls(args: argparse.Namespace) -> int:
    d = _distribution(args.inp, args)
    if not d.in_group:
        raise InputError("LS-transform needs every first moment equal to 1")
    _emit(d.ls_transform.to_json(), args)
    return EXIT_OK


def cmd_s(args: argparse.Namespace) -> int:
    d = _distribution(args.inp, args)
    s: OneVarSeries = fp.s_transform(d)
    _emit(s.to_json(), args)
    return EXIT_OK


def cmd_inverse(args: argparse.Namespace) -> int:
    _emit(fp.boxtimes_inverse(_distribution(args.inp, args)).to_json(), args)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    degree = args.degree if args.degree is not None else 5
    if not 2 <= degree <= 6:
        raise InputError(f"verify supports degrees 2..6, got {degree}")
    rep = run_suite(args.suite, degree)
    _emit(rep.to_json(), args)
    return EXIT_OK if rep.ok else EXIT_VERIFY


COMMANDS = {
    "cumulants": (cmd_cumulants, "free cumulants (R-transform) of a distribution"),
    "moments": (cmd_moments, "moments from an R-transform"),
    "boxtimes": (cmd_boxtimes, "free multiplicative convolution of two distributions"),
    "ls": (cmd_ls, "LS-transform of a distribution"),
    "s": (cmd_s, "S-transform of a one-variable distribution"),
    "inverse": (cmd_inverse, "inverse under free multiplicative convolution"),
    "verify": (cmd_verify, "run a verification suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncfree", description="Exact free multiplicative convolution toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--in", dest="inp", metavar="PATH", help="input JSON file")
        if name == "boxtimes":
            p.add_argument("--in2", metavar="PATH", required=True, help="second input JSON file")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.add_argument("--degree", type=int, help="truncation degree (verify: suite degree, default 5)")
        p.add_argument("--k", type=int, help="expected number of variables")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--decimal", action="store_true", help="show decimals in text output")
        if name == "verify":
            p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree is not None and args.degree < 1:
        parser.error("--degree must be positive")
    if args.decimal and args.format != "text":
        parser.error("--decimal only applies to --format text")
    try:
        return args.func(args)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
