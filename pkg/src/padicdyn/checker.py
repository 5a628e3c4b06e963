"""Certified orbit-variety intersection analysis.

Given coordinatewise polynomial dynamics (P_1, ..., P_g) on affine g-space,
attracting fixed points alpha_i sharing one multiplier a1, a start point x in
the basin, and a variety V cut out by polynomial generators, this module
decides between:

* ``finite`` -- some generator pulls back to an analytic function F(w) along
  the linearized orbit direction with a certified nonzero coefficient; its
  certified Newton-polygon zero count bounds the number of distinct orbit
  points with index >= n0 lying on V;
* ``invariant_candidate`` -- every generator's F vanishes to working precision
  through the truncation order, the signature of a positive-dimensional
  invariant subvariety (claimed only to precision: no equations are derived);
* ``inconclusive`` -- precision or truncation was insufficient to certify
  either branch; the reason is reported precisely.

The direct orbit scan (iterate and test every generator) is kept strictly
independent of the F-side analysis so it can serve as an oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PrecisionError, ValidationError
from .padic import PadicContext, PadicNumber
from .multipoly import MultivariatePoly
from .linearize import linearize
from .series import TruncatedSeries

_QP_NOTE = (
    "analysis runs over Q_p (unramified, capped precision); ramified data is"
    " out of scope"
)
_BOUND_NOTE = (
    "zero-count bounds count zeros of F in the whole orbit ball, which may"
    " exceed the number of orbit hits"
)
_CANDIDATE_NOTE = (
    "invariant-subvariety candidate is asserted only to working precision"
    " through the truncation order; no exact vanishing certificate exists"
)


@dataclass
class SystemSpec:
    """A dynamical intersection problem instance."""

    ctx: PadicContext
    maps: list
    fixed_points: list
    start: list
    variety: list
    truncation: int = 64
    max_direct_iterations: int = 200


@dataclass
class ValidatedSystem:
    """A SystemSpec with constructed linearizations and the orbit advanced
    until every coordinate sits inside its certified isometry ball."""

    spec: SystemSpec
    linearizations: list
    multiplier: PadicNumber
    n0: int
    advanced_start: list
    degenerate: bool


@dataclass
class GeneratorReport:
    index: int
    kind: str  # "finite" | "zero_to_precision"
    zero_count: int | None = None
    count_certified: bool | None = None
    newton_polygon: list | None = None
    detail: str | None = None


@dataclass
class AnalysisReport:
    """Certified outcome.

    ``bound`` (when the verdict is ``finite`` and ``bound_certified``) is an
    upper bound on the number of *distinct orbit points* with index >= n0 on
    the variety.  For non-degenerate systems strict contraction makes orbit
    points pairwise distinct, so it equally bounds the hit indices; for the
    degenerate one-point orbit every index may be a hit while the point count
    is at most 1.
    """

    verdict: str
    bound: int | None
    bound_certified: bool
    complete: bool | None
    direct_hits: list
    n0: int
    reindexing: list
    lambdas: list
    multiplier: PadicNumber
    isometry_radii: list
    count_ball_valuation: int | None
    degenerate: bool
    generators: list
    notes: list = field(default_factory=list)
    detail: str | None = None


def validate(spec: SystemSpec) -> ValidatedSystem:
    """Check every hypothesis and advance the orbit into the isometry balls.

    Raises ValidationError naming the violated hypothesis otherwise.
    """
    g = len(spec.maps)
    if g < 2:
        raise ValidationError("need at least two coordinates (g >= 2)")
    if not (len(spec.fixed_points) == len(spec.start) == g):
        raise ValidationError("maps, fixed_points and start must all have length g")
    for f in spec.variety:
        if f.nvars != g:
            raise ValidationError(f"variety generator has {f.nvars} variables, expected {g}")
    if not spec.variety:
        raise ValidationError("variety must have at least one generator")
    lins = []
    for i, (P, alpha) in enumerate(zip(spec.maps, spec.fixed_points)):
        if P.ctx != spec.ctx:
            raise ValidationError("all maps must share the problem context")
        try:
            lins.append(linearize(P, alpha, spec.truncation))
        except (ValidationError, PrecisionError) as exc:
            raise ValidationError(f"coordinate {i + 1}: {exc}") from exc
    a1 = lins[0].multiplier
    for i, lin in enumerate(lins[1:], start=2):
        if not (lin.multiplier - a1).is_zero_to_precision:
            raise ValidationError(
                "the fixed points must share one multiplier: coordinate"
                f" {i} has v={lin.multiplier.valuation}, expected the"
                f" multiplier of coordinate 1 (v={a1.valuation})"
            )
    distances = [x - a for x, a in zip(spec.start, spec.fixed_points)]
    if all(d.is_zero_to_precision for d in distances):
        return ValidatedSystem(spec, lins, a1, 0, list(spec.start), True)
    cur = list(spec.start)
    for n in range(spec.max_direct_iterations + 1):
        inside = True
        for z, lin in zip(cur, lins):
            try:
                if not lin.isometry_ball.contains(z):
                    inside = False
                    break
            except PrecisionError as exc:
                raise ValidationError(
                    f"cannot certify ball membership at orbit index {n}: {exc}"
                ) from exc
        if inside:
            return ValidatedSystem(spec, lins, a1, n, cur, False)
        cur = [P(z) for P, z in zip(spec.maps, cur)]
    raise ValidationError(
        "start point does not reach the certified isometry balls within"
        f" {spec.max_direct_iterations} steps"
    )


def direct_orbit_scan(validated: ValidatedSystem, n_max: int | None = None) -> list:
    """Indices n <= n_max at which every generator vanishes to precision.

    Independent oracle: it only iterates the maps and evaluates the generators.
    Raises PrecisionError (with ``failing_index``) when a coordinate that
    started resolved becomes indistinguishable from its fixed point, the
    expected exhaustion mode of long orbits at fixed precision.
    """
    spec = validated.spec
    if n_max is None:
        n_max = spec.max_direct_iterations
    cur = list(spec.start)
    resolved = [
        (x - a).is_certified_nonzero for x, a in zip(spec.start, spec.fixed_points)
    ]
    hits = []
    for n in range(n_max + 1):
        if n > 0:
            cur = [P(z) for P, z in zip(spec.maps, cur)]
        for i, (z, alpha) in enumerate(zip(cur, spec.fixed_points)):
            if resolved[i] and not (z - alpha).is_certified_nonzero:
                exc = PrecisionError(
                    f"orbit coordinate {i + 1} collapsed below working precision"
                    f" at index {n}: raise the precision to scan further"
                )
                exc.failing_index = n
                raise exc
        if all(f.evaluate(cur).is_zero_to_precision for f in spec.variety):
            hits.append(n)
    return hits


def compute_lambdas(validated: ValidatedSystem):
    """Reindexing permutation and log ratios lambda_i at orbit index n0.

    The lead coordinate maximizes |log(advanced start)| (minimizes the
    valuation; ties broken by original order), which forces v(lambda_i) >= 0
    for every other coordinate.  A coordinate sitting at its fixed point gets
    lambda exactly 0.
    """
    if validated.degenerate:
        raise ValidationError("lambdas undefined for the degenerate one-point orbit")
    spec = validated.spec
    logs = []
    for z, lin in zip(validated.advanced_start, validated.linearizations):
        d = z - lin.fixed_point
        logs.append(lin.log_of(z) if d.is_certified_nonzero else None)
    lead = None
    best = None
    for i, L in enumerate(logs):
        if L is None:
            continue
        if best is None or L.valuation < best:
            best = L.valuation
            lead = i
    if lead is None:
        raise ValidationError("all coordinates are at their fixed points")
    lambdas = []
    for i, L in enumerate(logs):
        if i == lead:
            lambdas.append(spec.ctx.one())
        elif L is None:
            lambdas.append(spec.ctx.zero())
        else:
            lam = L / logs[lead]
            if lam.valuation < 0:
                raise ValidationError("lambda with negative valuation: reindexing failed")
            lambdas.append(lam)
    perm = [lead] + [i for i in range(len(logs)) if i != lead]
    return perm, lambdas


def build_F(validated: ValidatedSystem, f: MultivariatePoly,
            lead: int, lambdas: list) -> TruncatedSeries:
    """Pullback of a generator to a series in w = u - alpha_lead:

        F(w) = f(..., alpha_i + E_i(lambda_i * L_lead(w)), ...)

    with the lead coordinate substituted as alpha_lead + w.  Along the orbit,
    w = P_lead^n(x_lead) - alpha_lead reproduces f at the orbit point.
    """
    spec = validated.spec
    ctx = spec.ctx
    t = spec.truncation
    lead_lin = validated.linearizations[lead]
    log_lead = lead_lin.log_series
    coords = []
    for i, lin in enumerate(validated.linearizations):
        alpha = lin.fixed_point
        if i == lead:
            coords.append(TruncatedSeries.from_coefficients(ctx, [alpha, ctx.one()], order=t))
        elif lambdas[i].is_zero_to_precision:
            coords.append(TruncatedSeries.constant(ctx, alpha, t))
        else:
            inner = log_lead.scale(lambdas[i])
            coords.append(lin.exp_series.compose(inner) + alpha)
    return f.evaluate_series(coords, t)


def _degenerate_report(validated: ValidatedSystem, n_max: int) -> AnalysisReport:
    spec = validated.spec
    point = validated.advanced_start
    members = [f.evaluate(point).is_zero_to_precision for f in spec.variety]
    on_variety = all(members)
    hits = list(range(n_max + 1)) if on_variety else []
    gens = [
        GeneratorReport(
            index=j + 1,
            kind="zero_to_precision" if members[j] else "finite",
            zero_count=None,
            count_certified=None,
            newton_polygon=None,
            detail="evaluated at the fixed orbit point",
        )
        for j in range(len(spec.variety))
    ]
    notes = [
        _QP_NOTE,
        "degenerate instance: every start coordinate equals its fixed point,"
        " so the orbit is a single point and the analysis is one membership"
        " test",
    ]
    return AnalysisReport(
        verdict="finite",
        bound=1 if on_variety else 0,
        bound_certified=True,
        complete=True,
        direct_hits=hits,
        n0=0,
        reindexing=list(range(len(spec.maps))),
        lambdas=[],
        multiplier=validated.multiplier,
        isometry_radii=[lin.isometry_radius_valuation for lin in validated.linearizations],
        count_ball_valuation=None,
        degenerate=True,
        generators=gens,
        notes=notes,
    )


def analyze(spec: SystemSpec) -> AnalysisReport:
    """Run the full procedure; every analysis failure is an Inconclusive verdict.

    Hypothesis violations (wrong multipliers, unreachable balls, bad input)
    still raise ValidationError: they are input errors, not analysis outcomes.
    """
    validated = validate(spec)
    n_max = spec.max_direct_iterations
    if validated.degenerate:
        return _degenerate_report(validated, n_max)

    scan_error = None
    try:
        hits = direct_orbit_scan(validated, n_max)
    except PrecisionError as exc:
        scan_error = exc
        hits = []

    perm, lambdas = compute_lambdas(validated)
    lead = perm[0]
    d_lead = validated.advanced_start[lead] - validated.linearizations[lead].fixed_point
    m_count = d_lead.valuation
    radii = [lin.isometry_radius_valuation for lin in validated.linearizations]

    gens = []
    finite_counts = []
    all_zero = True
    inconclusive_details = []
    for j, f in enumerate(spec.variety):
        F = build_F(validated, f, lead, lambdas)
        if F.is_certified_zero_through_order():
            gens.append(
                GeneratorReport(index=j + 1, kind="zero_to_precision",
                                detail="F vanishes to precision through the truncation order")
            )
            continue
        all_zero = False
        zc = F.count_zeros_in_ball(m_count)
        np_data = [(str(s), int(l)) for s, l in F.newton_polygon()]
        gens.append(
            GeneratorReport(
                index=j + 1,
                kind="finite",
                zero_count=zc.count,
                count_certified=zc.certified,
                newton_polygon=np_data,
                detail=zc.reason,
            )
        )
        if zc.certified:
            finite_counts.append(zc.count)
        else:
            inconclusive_details.append(f"generator {j + 1}: {zc.reason}")

    notes = [_QP_NOTE, _BOUND_NOTE]
    common = dict(
        direct_hits=hits,
        n0=validated.n0,
        reindexing=perm,
        lambdas=lambdas,
        multiplier=validated.multiplier,
        isometry_radii=radii,
        count_ball_valuation=m_count,
        degenerate=False,
        generators=gens,
    )

    if scan_error is not None:
        return AnalysisReport(
            verdict="inconclusive", bound=None, bound_certified=False,
            complete=None, notes=notes, detail=str(scan_error), **common,
        )
    if all_zero:
        return AnalysisReport(
            verdict="invariant_candidate", bound=None, bound_certified=False,
            complete=None, notes=notes + [_CANDIDATE_NOTE], **common,
        )
    if not finite_counts:
        detail = "; ".join(inconclusive_details) or "no certified zero count"
        return AnalysisReport(
            verdict="inconclusive", bound=None, bound_certified=False,
            complete=None, notes=notes, detail=detail, **common,
        )
    bound = min(finite_counts)
    late_hits = [n for n in hits if n >= validated.n0]
    if len(late_hits) > bound:
        return AnalysisReport(
            verdict="inconclusive", bound=None, bound_certified=False,
            complete=None, notes=notes,
            detail=(
                f"{len(late_hits)} precision-level hits at indices >= n0 exceed"
                f" the certified zero count {bound}: raise the working"
                " precision to separate true hits from precision artifacts"
            ),
            **common,
        )
    return AnalysisReport(
        verdict="finite", bound=bound, bound_certified=True,
        complete=len(late_hits) >= bound, notes=notes, **common,
    )
