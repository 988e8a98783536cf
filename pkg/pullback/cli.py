"""Command-line front end.

Usage:
    pullback analyze evals/fixtures/lattes_quartic.json
    pullback --field "w^2+w+1" rank --map="-z*(z^3+2)/(2*z^3+1)" \\
        --A="0,-1,-w,-w^2" --B="0,-1,-w,-w^2"
    pullback --json tables
    pullback verify-lattes --samples 20

Exit status: 0 success or positive verdict, 1 negative verdict or table
mismatch, 2 unreadable input, 3 input violating a mathematical precondition.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from pydantic import ValidationError

from pullback import __version__
from pullback.algebra import (
    QQ,
    Field,
    parse_constant,
    parse_field_tower,
    parse_points,
    parse_qd,
    parse_ratfunc,
)
from pullback.bicritical import (
    BicriticalClass,
    bicritical_portrait,
    curve_components,
    curve_fiber,
    map_t,
    nonconstancy_witness,
    normal_form,
    normal_form_check,
)
from pullback.config import Settings, get_settings
from pullback.dynamics import FilterOptions, constant_pullback_filter, enumerate_portraits
from pullback.errors import InputError, InvariantError
from pullback.lattes import verify_lattes
from pullback.monodromy import (
    deck_group,
    enumerate_triples,
    shared_cycle_check,
    validate_triple,
)
from pullback.portrait import Portrait, compose_portraits, composition_rank_cap, rank_lower_bound
from pullback.pushforward import (
    QuadraticDifferential,
    asymptotic_constant,
    cauchy_like_det,
    coderivative_rank,
    laurent_local_pushforward,
    pole_locus,
    pushforward,
)
from pullback.reports import (
    EXIT_INPUT,
    EXIT_INVARIANT,
    EXIT_NEGATIVE,
    EXIT_OK,
    analyze_portrait,
    make_report,
    render,
    verdict_exit,
)
from pullback.schemas import EnumSpec, PortraitModel, TripleModel, portrait_to_dict
from pullback.tables import reproduce_tables

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def load_portrait(path: str) -> Portrait:
    model = PortraitModel.model_validate_json(_read(path))
    return model.to_portrait(name=Path(path).stem if path != "-" else None)


def _field(args: argparse.Namespace) -> Field:
    return parse_field_tower(args.field) if args.field else QQ


def _constants(text: str, field: Field) -> list[Any]:
    return [parse_constant(part, field) for part in text.split(",") if part.strip()]


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except ValueError as e:
        raise InputError(f"{text!r} is not a rational number") from e


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace, settings: Settings):
    options = FilterOptions.with_unproved() if args.unproved else None
    return analyze_portrait(load_portrait(args.portrait), options)


def cmd_filter_constant(args: argparse.Namespace, settings: Settings):
    p = load_portrait(args.portrait)
    options = FilterOptions.with_unproved() if args.unproved else None
    report = constant_pullback_filter(p, options)
    verdict = report.as_verdict()
    return make_report("filter-constant", report.to_dict(), verdict.citations, verdict_exit(verdict))


def cmd_pushforward(args: argparse.Namespace, settings: Settings):
    field = _field(args)
    g = parse_ratfunc(args.map, field)
    q = QuadraticDifferential(parse_qd(args.qd, field))
    result = pushforward(g, q)
    return make_report("pushforward", {
        "map": str(g),
        "qd": str(q),
        "pushforward": str(result),
        "zero": result.is_zero(),
        "pole_locus": str(pole_locus(g, q)),
    })


def cmd_rank(args: argparse.Namespace, settings: Settings):
    field = _field(args)
    g = parse_ratfunc(args.map, field)
    A, B = parse_points(args.A, field), parse_points(args.B, field)
    r, matrix = coderivative_rank(g, A, B)
    return make_report("rank", {
        "map": str(g),
        "A": [str(a) for a in A],
        "B": [str(b) for b in B],
        "rank": r,
        "matrix": matrix.to_dict(),
    })


def cmd_laurent(args: argparse.Namespace, settings: Settings):
    field = _field(args)
    coeffs: dict[int, Any] = {}
    for item in args.a:
        k, sep, value = item.partition("=")
        if not sep or not k.strip().lstrip("-").isdigit():
            raise InputError(f"coefficient {item!r} is not of the form K=VALUE")
        coeffs[int(k)] = parse_constant(value, field)
    out = laurent_local_pushforward(args.m, coeffs, args.jmax)
    return make_report("laurent", {
        "m": args.m,
        "b": {str(j): str(v) for j, v in out.items()},
    })


def cmd_cauchy_det(args: argparse.Namespace, settings: Settings):
    field = _field(args)
    w, u = _constants(args.w, field), _constants(args.u, field)
    return make_report("cauchy-det", {"w": args.w, "u": args.u, "det": str(cauchy_like_det(w, u))})


def cmd_asymptotic(args: argparse.Namespace, settings: Settings):
    g = parse_ratfunc(args.map)
    fit = asymptotic_constant(
        g,
        _rational(args.critical),
        [_rational(x) for x in args.u.split(",")],
        [_rational(t) for t in (args.t or ["1/100000000"])],
        settings.precision,
    )
    return make_report("asymptotic", fit.to_dict())


def cmd_bicritical(args: argparse.Namespace, settings: Settings):
    c = BicriticalClass(args.d, args.lam, args.lam_prime, args.case)
    results: dict[str, Any] = {"class": c.to_dict(), "curve": curve_components(c).to_dict()}
    if args.tprime is None:
        witness = nonconstancy_witness(c)
        results["witness"] = witness.to_dict()
        points = [p for fib in witness.fibers for p in fib]
    else:
        points = curve_fiber(c, _rational(args.tprime))
        results["tprime"] = args.tprime
        results["points"] = [p.to_dict() for p in points]
        results["t_values"] = [str(map_t(p, c.d)) for p in points]
        results["normal_form"] = [str(normal_form(p, c.d)) for p in points]
    checks = [normal_form_check(p, c) for p in points]
    results["normal_form_checks"] = [r.to_dict() for r in checks]
    if points:
        p = bicritical_portrait(c, points[0])
        results["portrait"] = portrait_to_dict(p)
        results["rank_lower_bound"] = rank_lower_bound(p)
    return make_report("bicritical", results)


def cmd_dessin(args: argparse.Namespace, settings: Settings):
    if args.passport:
        passport = [[int(x) for x in part.split(",")] for part in args.passport.split(";")]
        triples = enumerate_triples(args.degree, passport)
        return make_report("dessin", {
            "degree": args.degree,
            "passport": passport,
            "classes": [
                {**TripleModel.from_triple(t).model_dump(), "deck_order": len(deck_group(t))}
                for t in triples
            ],
        })
    if not args.triple:
        raise InputError("dessin needs a triple file or --degree with --passport")
    t = TripleModel.model_validate_json(_read(args.triple)).to_triple()
    report = validate_triple(t)
    results: dict[str, Any] = {"triple": str(t), "report": report.to_dict()}
    if report.product_identity and report.transitive:
        results["deck_group"] = [str(s) for s in deck_group(t)]
    if args.points:
        results["shared_cycle"] = shared_cycle_check(t, [int(x) for x in args.points.split(",")])
    return make_report("dessin", results, exit_status=EXIT_OK if report.ok else EXIT_NEGATIVE)


def cmd_enumerate(args: argparse.Namespace, settings: Settings):
    spec = EnumSpec.model_validate_json(_read(args.spec))
    portraits = enumerate_portraits(spec)
    return make_report("enumerate", {
        "spec": spec.model_dump(),
        "count": len(portraits),
        "portraits": [portrait_to_dict(p) for p in portraits],
    })


def cmd_tables(args: argparse.Namespace, settings: Settings):
    diffs = reproduce_tables(with_unproved=args.unproved)
    ok = all(d.ok for d in diffs)
    return make_report(
        "tables",
        {d.name: d.to_dict() for d in diffs},
        ["deck-trivial", "postcritical-preimages"],
        EXIT_OK if ok else EXIT_NEGATIVE,
    )


def cmd_verify_lattes(args: argparse.Namespace, settings: Settings):
    report = verify_lattes(
        samples=args.samples, seed=settings.seed, numeric=args.numeric, bits=settings.precision
    )
    return make_report("verify-lattes", report, exit_status=EXIT_OK if report["ok"] else EXIT_NEGATIVE)


def cmd_compose(args: argparse.Namespace, settings: Settings):
    f, g = load_portrait(args.inner), load_portrait(args.outer)
    composite = compose_portraits(f, g)
    return make_report("compose", {
        "composite": portrait_to_dict(composite),
        "rank_cap": composition_rank_cap(f, g),
        "rank_lower_bound": rank_lower_bound(composite),
    })


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pullback", description="Rank of Thurston pullback maps"
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true", help="JSON instead of YAML text")
    parser.add_argument("--seed", type=int, help="Seed for sampled checks")
    parser.add_argument("--precision", type=int, help="Bits for floating-point checks")
    parser.add_argument(
        "--field", action="append", metavar="MODULUS",
        help="Adjoin a root of MODULUS (repeatable, bottom layer first)",
    )
    parser.add_argument("--log-level", type=str, help="Logging level")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = add("analyze", cmd_analyze, "Rank bounds and constancy filters for a portrait file")
    p.add_argument("portrait")
    p.add_argument("--unproved", action="store_true", help="Also run filters stated without proof")

    p = add("filter-constant", cmd_filter_constant, "Constancy filters only")
    p.add_argument("portrait")
    p.add_argument("--unproved", action="store_true")

    p = add("pushforward", cmd_pushforward, "Exact pushforward of a quadratic differential")
    p.add_argument("--map", required=True)
    p.add_argument("--qd", required=True)

    p = add("rank", cmd_rank, "Rank of the coderivative at a realized marking")
    p.add_argument("--map", required=True)
    p.add_argument("--A", required=True, help="Source marked points, comma separated")
    p.add_argument("--B", required=True, help="Target marked points, comma separated")

    p = add("laurent", cmd_laurent, "Local pushforward under z -> z^m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", action="append", default=[], metavar="K=VALUE")
    p.add_argument("--jmax", type=int, default=5)

    p = add("cauchy-det", cmd_cauchy_det, "Cauchy-like determinant")
    p.add_argument("--w", required=True)
    p.add_argument("--u", required=True)

    p = add("asymptotic", cmd_asymptotic, "Asymptotic constant near a simple critical point")
    p.add_argument("--map", required=True)
    p.add_argument("--critical", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--t", action="append", help="Sample value of t (repeatable)")

    p = add("bicritical", cmd_bicritical, "Curve fibers and nonconstancy witnesses")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--lambda-prime", dest="lam_prime", type=int, required=True)
    p.add_argument("--case", choices=["split", "cycle"], default="split")
    p.add_argument("--tprime")

    p = add("dessin", cmd_dessin, "Validate a permutation triple or enumerate a passport")
    p.add_argument("triple", nargs="?")
    p.add_argument("--points", help="Four labels for the shared-cycle check")
    p.add_argument("--degree", type=int)
    p.add_argument("--passport", help='Cycle types, e.g. "3;2,1;2,1"')

    p = add("enumerate", cmd_enumerate, "Enumerate dynamical portraits from a JSON spec")
    p.add_argument("spec")

    p = add("tables", cmd_tables, "Regenerate the portrait tables and diff them")
    p.add_argument("--unproved", action="store_true")

    p = add("verify-lattes", cmd_verify_lattes, "Lattès curve checks")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--numeric", action="store_true")

    p = add("compose", cmd_compose, "Compose two portraits")
    p.add_argument("inner")
    p.add_argument("outer")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings().override(
        seed=args.seed, precision=args.precision, log_level=args.log_level
    )
    logging.basicConfig(level=settings.log_level.upper(), stream=sys.stderr)

    try:
        report = args.handler(args, settings)
    except (InputError, ValidationError, json.JSONDecodeError, OSError) as e:
        logger.debug("input error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as e:
        logger.debug("invariant error", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVARIANT

    print(render(report, as_json=args.json))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
