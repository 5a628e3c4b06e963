"""Problem files and report documents.

A problem file is a JSON document:

    {
      "prime": 3,
      "precision": 128,          // optional, default 128
      "truncation": 64,          // optional, default 64
      "max_iterations": 200,     // optional, default 200
      "polynomials": [["0", "3", "1"], ["0", "3", "1"]],
      "fixed_points": ["0", "0"],   // optional: discovered when absent
      "start": ["3", "9"],
      "variety": [
        [ {"exponents": [1, 0], "coefficient": "1"},
          {"exponents": [0, 1], "coefficient": "-1"} ]
      ]
    }

Coefficients are exact rationals written as strings ("a/b" or "a"); polynomial
coefficient lists are degree-ascending.  Reports are rendered as canonical JSON
(sorted keys, fixed separators) so byte-identical reruns are a guarantee, and
instances double as golden-file fixtures.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ValidationError
from .padic import PadicContext, PadicNumber
from .dynamics import ATTRACTING, Polynomial, find_fixed_points
from .multipoly import MultivariatePoly
from .checker import AnalysisReport, SystemSpec

REPORT_SCHEMA_VERSION = 1

DEFAULT_PRECISION = 128
DEFAULT_TRUNCATION = 64
DEFAULT_MAX_ITERATIONS = 200


def _parse_rational(ctx: PadicContext, text, where: str) -> PadicNumber:
    try:
        frac = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{where}: {text!r} is not an exact rational") from exc
    return ctx.from_rational(frac.numerator, frac.denominator)


def _require(doc: dict, key: str, path: str):
    if key not in doc:
        raise ValidationError(f"{path}: missing required field {key!r}")
    return doc[key]


def load_problem(text: str, path: str = "problem",
                 precision: int | None = None, truncation: int | None = None,
                 max_iterations: int | None = None) -> SystemSpec:
    """Parse a problem document into a SystemSpec (overrides win over fields)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top level must be an object")
    prime = _require(doc, "prime", path)
    if not isinstance(prime, int):
        raise ValidationError(f"{path}: prime must be an integer")
    n = precision if precision is not None else doc.get("precision", DEFAULT_PRECISION)
    t = truncation if truncation is not None else doc.get("truncation", DEFAULT_TRUNCATION)
    n_max = (
        max_iterations
        if max_iterations is not None
        else doc.get("max_iterations", DEFAULT_MAX_ITERATIONS)
    )
    if not (isinstance(n, int) and n >= 1):
        raise ValidationError(f"{path}: precision must be a positive integer")
    if not (isinstance(t, int) and t >= 1):
        raise ValidationError(f"{path}: truncation must be a positive integer")
    if not (isinstance(n_max, int) and n_max >= 0):
        raise ValidationError(f"{path}: max_iterations must be >= 0")
    try:
        ctx = PadicContext(prime, n)
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from exc

    polys_doc = _require(doc, "polynomials", path)
    if not isinstance(polys_doc, list) or not polys_doc:
        raise ValidationError(f"{path}: polynomials must be a nonempty list")
    maps = []
    for i, coeffs in enumerate(polys_doc, start=1):
        if not isinstance(coeffs, list) or len(coeffs) < 2:
            raise ValidationError(
                f"{path}: polynomials[{i}] must list at least two coefficients"
            )
        maps.append(
            Polynomial(ctx, [
                _parse_rational(ctx, c, f"{path}: polynomials[{i}][{j}]")
                for j, c in enumerate(coeffs)
            ])
        )
    g = len(maps)

    start_doc = _require(doc, "start", path)
    if not isinstance(start_doc, list) or len(start_doc) != g:
        raise ValidationError(f"{path}: start must list {g} rationals")
    start = [
        _parse_rational(ctx, s, f"{path}: start[{i}]")
        for i, s in enumerate(start_doc, start=1)
    ]

    if "fixed_points" in doc:
        fp_doc = doc["fixed_points"]
        if not isinstance(fp_doc, list) or len(fp_doc) != g:
            raise ValidationError(f"{path}: fixed_points must list {g} rationals")
        fixed_points = [
            _parse_rational(ctx, s, f"{path}: fixed_points[{i}]")
            for i, s in enumerate(fp_doc, start=1)
        ]
    else:
        fixed_points = [_discover_fixed_point(P, i) for i, P in enumerate(maps, start=1)]

    variety_doc = _require(doc, "variety", path)
    if not isinstance(variety_doc, list) or not variety_doc:
        raise ValidationError(f"{path}: variety must be a nonempty list of generators")
    variety = []
    for j, gen in enumerate(variety_doc, start=1):
        if not isinstance(gen, list) or not gen:
            raise ValidationError(f"{path}: variety[{j}] must be a nonempty term list")
        terms = {}
        for k, term in enumerate(gen, start=1):
            where = f"{path}: variety[{j}][{k}]"
            if not isinstance(term, dict):
                raise ValidationError(f"{where}: term must be an object")
            expo = _require(term, "exponents", where)
            coeff = _require(term, "coefficient", where)
            if not (isinstance(expo, list) and len(expo) == g):
                raise ValidationError(f"{where}: exponents must list {g} integers")
            key = tuple(int(e) for e in expo)
            if key in terms:
                raise ValidationError(f"{where}: duplicate exponent vector {key}")
            terms[key] = _parse_rational(ctx, coeff, where)
        variety.append(MultivariatePoly(ctx, g, terms))

    return SystemSpec(ctx, maps, fixed_points, start, variety, t, n_max)


def _discover_fixed_point(P: Polynomial, index: int) -> PadicNumber:
    scan = find_fixed_points(P)
    attracting = [fp for fp in scan.points if fp.classification == ATTRACTING]
    if len(attracting) == 1:
        return attracting[0].point
    if not attracting:
        raise ValidationError(
            f"polynomial {index}: no attracting fixed point found in Z_p;"
            " specify fixed_points explicitly"
        )
    raise ValidationError(
        f"polynomial {index}: {len(attracting)} attracting fixed points found;"
        " specify fixed_points explicitly"
    )


# -- rendering -----------------------------------------------------------------


def render_padic(x: PadicNumber, digit_count: int = 8) -> dict:
    """Diff-stable rendering: valuation, leading base-p digits, precision."""
    if x.is_exact_zero:
        return {"zero": "exact"}
    if x.is_zero_to_precision:
        return {"zero_to_valuation": x.zero_bound}
    return {
        "valuation": x.valuation,
        "digits": x.digits(digit_count),
        "precision": x.relative_precision,
    }


def render_report(report: AnalysisReport, spec: SystemSpec) -> str:
    """Canonical JSON report document (byte-identical across reruns)."""
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "parameters": {
            "prime": spec.ctx.prime,
            "precision": spec.ctx.working_precision,
            "truncation": spec.truncation,
            "max_iterations": spec.max_direct_iterations,
            "coordinates": len(spec.maps),
        },
        "multiplier": render_padic(report.multiplier),
        "isometry_radius_valuations": report.isometry_radii,
        "n0": report.n0,
        "reindexing": [i + 1 for i in report.reindexing],
        "lambdas": [render_padic(l) for l in report.lambdas],
        "direct_hits": report.direct_hits,
        "count_ball_valuation": report.count_ball_valuation,
        "degenerate": report.degenerate,
        "generators": [
            {
                "index": g.index,
                "kind": g.kind,
                "zero_count": g.zero_count,
                "count_certified": g.count_certified,
                "newton_polygon": g.newton_polygon,
                "detail": g.detail,
            }
            for g in report.generators
        ],
        "overall": {
            "verdict": report.verdict,
            "bound": report.bound,
            "bound_certified": report.bound_certified,
            "complete": report.complete,
            "detail": report.detail,
        },
        "notes": report.notes,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
