"""Command-line surface: every library capability behind one scriptable tool.

Human output mirrors descending-power polynomial notation; ``--json`` mode
emits exactly one JSON document on stdout with every unbounded integer as a
decimal string, so downstream tools never truncate at 53 bits.

Exit status: 0 success/pass, 1 mathematical failure (verification fail,
no representation, no sign change, certification stage failure), 2 usage
error (malformed polynomial or JSON, bad flags).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from .algnum import InconclusiveError, RationalInterval, isolate_root
from .certify import (
    DEFAULT_SWEEP_LEVEL,
    DEFAULT_SWEEP_M,
    CertificationError,
    Certificate,
    build_certificate,
    search_family,
    verify_certificate,
)
from .clopen import (
    ClopenSet,
    compose_witness,
    measure_form,
    measure_spectrum,
    realize,
)
from .intpoly import (
    IntPoly,
    PolyParseError,
    compose,
    format_poly,
    parse_poly,
    poly_to_coeff_strings,
)
from .partition import (
    DEFAULT_MAX_LEVEL,
    FormSearchExhausted,
    PartitionForm,
    depth,
    dominates,
    expand,
    to_form,
)

__all__ = ["main"]

_PAPER_F = IntPoly((0, 3, -3))
_PAPER_PRIME = 3


class _UsageError(Exception):
    pass


def _env_max_level() -> int:
    raw = os.environ.get("CANTORLAB_MAX_LEVEL")
    if raw is None:
        return DEFAULT_MAX_LEVEL
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(f"CANTORLAB_MAX_LEVEL is not an integer: {raw!r}") from None
    if value < 0:
        raise _UsageError("CANTORLAB_MAX_LEVEL must be nonnegative")
    return value


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"not a rational number: {text!r}") from None


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _UsageError(f"bad JSON in {path}: {exc}") from None


def _load_clopen(path: str) -> ClopenSet:
    try:
        return ClopenSet.from_json_dict(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"bad clopen-set document {path}: {exc}") from None


def _load_form(path: str) -> PartitionForm:
    try:
        return PartitionForm.from_json_dict(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"bad partition-form document {path}: {exc}") from None


def _emit(args, payload: dict | list, human: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in human:
            print(line)


def _form_tuple(form: PartitionForm) -> str:
    return "(" + ", ".join(str(v) for v in form.a) + ")"


def _interval_human(iv: RationalInterval) -> str:
    if iv.exact:
        return f"exactly {iv.lo}"
    return f"[{iv.lo}, {iv.hi}]"


def _certificate_human(cert: Certificate) -> list[str]:
    sweep = cert.sweep
    return [
        f"F          = {format_poly(cert.f_poly)}",
        f"F form     = level {cert.f_form.n}, {_form_tuple(cert.f_form)}",
        f"G          = {format_poly(cert.g_poly)}",
        f"G form     = level {cert.g_form.n}, {_form_tuple(cert.g_form)}",
        f"p          = {cert.prime}",
        f"r minpoly  = {format_poly(cert.r_minpoly)}",
        f"alpha poly = {format_poly(cert.alpha_poly)}",
        f"r interval = {_interval_human(cert.r_interval)}",
        f"s interval = {_interval_human(cert.s_interval)}",
        f"sweep      = m <= {sweep.max_m}, level <= {sweep.max_level}: "
        f"{sweep.forms_checked} forms, {sweep.violations} violations",
    ]


# -- subcommand handlers ----------------------------------------------------


def _cmd_form(args) -> int:
    poly = parse_poly(args.poly)
    form = to_form(poly, args.n)
    if form is None:
        _emit(
            args,
            {"representable": False, "n": args.n},
            [f"not representable at level {args.n}"],
        )
        return 1
    _emit(
        args,
        {"representable": True, "form": form.to_json_dict()},
        [f"level {args.n} form {_form_tuple(form)}"],
    )
    return 0


def _cmd_depth(args) -> int:
    poly = parse_poly(args.poly)
    bound = args.max if args.max is not None else _env_max_level()
    d = depth(poly, bound)
    if d is None:
        _emit(
            args,
            {"depth": None, "max_level": bound},
            [f"unknown beyond level {bound}"],
        )
        return 1
    _emit(args, {"depth": d}, [str(d)])
    return 0


def _cmd_dominates(args) -> int:
    p = parse_poly(args.p)
    q = parse_poly(args.q)
    level = dominates(p, q, args.max)
    if level is None:
        bound = args.max if args.max is not None else "the default bound"
        _emit(args, {"level": None}, [f"no level found up to {bound}"])
        return 1
    _emit(args, {"level": level}, [str(level)])
    return 0


def _cmd_compose(args) -> int:
    result = compose(parse_poly(args.p), parse_poly(args.q))
    _emit(
        args,
        {"coeffs": poly_to_coeff_strings(result)},
        [format_poly(result)],
    )
    return 0


def _cmd_measure(args) -> int:
    words = _load_clopen(args.clopen)
    form = measure_form(words)
    poly = expand(form)
    _emit(
        args,
        {"form": form.to_json_dict(), "poly": poly_to_coeff_strings(poly)},
        [f"form {_form_tuple(form)}", f"polynomial {format_poly(poly)}"],
    )
    return 0


def _cmd_realize(args) -> int:
    form = _load_form(args.form)
    words = realize(form)
    _emit(
        args,
        words.to_json_dict(),
        [f"n = {words.n}", "words: " + (" ".join(words.words) or "(empty)")],
    )
    return 0


def _cmd_witness(args) -> int:
    outer = _load_clopen(args.outer)
    inner = _load_clopen(args.inner)
    witness = compose_witness(outer, inner)
    _emit(
        args,
        witness.to_json_dict(),
        [f"n = {witness.n}", "words: " + (" ".join(witness.words) or "(empty)")],
    )
    return 0


def _cmd_spectrum(args) -> int:
    polys = sorted(measure_spectrum(args.n), key=lambda p: (len(p.coeffs), p.coeffs))
    _emit(
        args,
        {"n": args.n, "polys": [poly_to_coeff_strings(p) for p in polys]},
        [format_poly(p) for p in polys],
    )
    return 0


def _cmd_isolate(args) -> int:
    poly = parse_poly(args.poly)
    bracket = RationalInterval(_parse_fraction(args.lo), _parse_fraction(args.hi))
    result = isolate_root(poly, bracket, _parse_fraction(args.width))
    _emit(args, result.to_json_dict(), [_interval_human(result)])
    return 0


def _cmd_certify(args) -> int:
    cert = build_certificate(
        parse_poly(args.f),
        args.p,
        max_level=args.max_level if args.max_level is not None else _env_max_level(),
        sweep_m=args.sweep_m,
        sweep_level=args.sweep_level,
    )
    _emit(args, cert.to_json_dict(), _certificate_human(cert))
    return 0


def _cmd_verify(args) -> int:
    try:
        cert = Certificate.from_json_dict(_load_json(args.certificate))
    except (KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"bad certificate document {args.certificate}: {exc}") from None
    report = verify_certificate(cert)
    payload = {
        "passed": report.passed,
        "checks": [
            {"name": name, "ok": ok, "detail": detail}
            for name, ok, detail in report.checks
        ],
    }
    human = [
        f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": {detail}")
        for name, ok, detail in report.checks
    ]
    human.append("certificate PASSES" if report.passed else "certificate FAILS")
    _emit(args, payload, human)
    return 0 if report.passed else 1


def _cmd_search(args) -> int:
    certs = list(
        search_family(
            args.p,
            args.max_degree,
            args.coeff_bound,
            max_level=args.max_level
            if args.max_level is not None
            else _env_max_level(),
            sweep_m=args.sweep_m,
            sweep_level=args.sweep_level,
        )
    )
    if args.json:
        print(json.dumps([c.to_json_dict() for c in certs], indent=2))
    else:
        for i, cert in enumerate(certs):
            print(f"# certificate {i + 1}")
            for line in _certificate_human(cert):
                print(line)
        print(f"{len(certs)} certificate(s)")
    return 0


def _cmd_verify_paper(args) -> int:
    cert = build_certificate(
        _PAPER_F,
        _PAPER_PRIME,
        max_level=args.max_level if args.max_level is not None else _env_max_level(),
        sweep_m=args.sweep_m,
        sweep_level=args.sweep_level,
    )
    report = verify_certificate(cert)
    if not report.passed:
        print("reference certificate failed verification:", file=sys.stderr)
        for line in report.failures():
            print("  " + line, file=sys.stderr)
        return 1
    human = _certificate_human(cert) + ["verification PASSES"]
    _emit(args, cert.to_json_dict(), human)
    return 0


# -- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantorlab",
        description="Exact partition-polynomial and clopen-measure toolkit",
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="emit one JSON document")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--max-level", type=int, default=None,
                       help="bounded-search level (default: CANTORLAB_MAX_LEVEL or 64)")
    sweep.add_argument("--sweep-m", type=int, default=DEFAULT_SWEEP_M)
    sweep.add_argument("--sweep-level", type=int, default=DEFAULT_SWEEP_LEVEL)

    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("form", parents=[shared], help="partition form at a level")
    sp.add_argument("poly")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_form)

    sp = sub.add_parser("depth", parents=[shared], help="least level with a form")
    sp.add_argument("poly")
    sp.add_argument("--max", type=int, default=None)
    sp.set_defaults(func=_cmd_depth)

    sp = sub.add_parser("dominates", parents=[shared],
                        help="least level with componentwise form domination")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("--max", type=int, default=None)
    sp.set_defaults(func=_cmd_dominates)

    sp = sub.add_parser("compose", parents=[shared], help="expand p(q(x))")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.set_defaults(func=_cmd_compose)

    sp = sub.add_parser("measure", parents=[shared],
                        help="measure form of a clopen word set")
    sp.add_argument("clopen", help="path to a clopen-set JSON document")
    sp.set_defaults(func=_cmd_measure)

    sp = sub.add_parser("realize", parents=[shared],
                        help="canonical word set realising a form")
    sp.add_argument("form", help="path to a partition-form JSON document")
    sp.set_defaults(func=_cmd_realize)

    sp = sub.add_parser("witness", parents=[shared],
                        help="independent-copies composition witness")
    sp.add_argument("outer", help="outer word set (JSON path)")
    sp.add_argument("inner", help="inner word set (JSON path)")
    sp.set_defaults(func=_cmd_witness)

    sp = sub.add_parser("spectrum", parents=[shared],
                        help="all measure polynomials at a word length")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("isolate", parents=[shared],
                        help="bisect a sign-change bracket to a width")
    sp.add_argument("poly")
    sp.add_argument("--lo", required=True)
    sp.add_argument("--hi", required=True)
    sp.add_argument("--width", required=True)
    sp.set_defaults(func=_cmd_isolate)

    sp = sub.add_parser("certify", parents=[shared, sweep],
                        help="build a certificate for F at a prime")
    sp.add_argument("--f", required=True, help="polynomial F")
    sp.add_argument("--p", type=int, required=True, help="odd prime")
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("verify", parents=[shared],
                        help="independently re-check a certificate document")
    sp.add_argument("certificate", help="path to a certificate JSON document")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("search", parents=[shared, sweep],
                        help="enumerate certifiable F for a prime")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--coeff-bound", type=int, required=True)
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("verify-paper", parents=[shared, sweep],
                        help="build and verify the reference certificate "
                             "(F = 3x - 3x^2, p = 3)")
    sp.set_defaults(func=_cmd_verify_paper)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"error: {exc} (offending token: {exc.token!r})", file=sys.stderr)
        return 2
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        CertificationError,
        FormSearchExhausted,
        InconclusiveError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
