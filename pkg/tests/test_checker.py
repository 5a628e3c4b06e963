"""The intersection analysis: validation, scanning, lambdas, F-series, verdicts."""

import copy

import pytest

from padicdyn import (
    MultivariatePoly,
    PadicContext,
    Polynomial,
    SystemSpec,
    ValidationError,
    analyze,
    build_F,
    compute_lambdas,
    direct_orbit_scan,
    iterate,
    validate,
)


@pytest.fixture(scope="module")
def ctx():
    return PadicContext(3, 128)


@pytest.fixture(scope="module")
def P(ctx):
    return Polynomial(ctx, [0, 3, 1])


def diag_generator(ctx):
    return MultivariatePoly(ctx, 2, {(1, 0): 1, (0, 1): -1})


def make_spec(ctx, P, start, variety, t=32, n_max=60):
    return SystemSpec(ctx, [P, P], [ctx.zero(), ctx.zero()], start, variety, t, n_max)


class TestValidate:
    def test_valid_p2_p2(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.integer(9)], [diag_generator(ctx)])
        v = validate(spec)
        assert not v.degenerate
        # start valuation 2; orbit enters the isometry ball after at most one step
        assert v.n0 <= max(0, v.linearizations[0].isometry_radius_valuation - 2)

    def test_degenerate(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.zero(), ctx.zero()], [diag_generator(ctx)])
        assert validate(spec).degenerate

    def test_unequal_multipliers_rejected(self, ctx, P):
        P2 = Polynomial(ctx, [0, 9, 1])
        spec = SystemSpec(
            ctx, [P, P2], [ctx.zero(), ctx.zero()],
            [ctx.integer(3), ctx.integer(3)], [diag_generator(ctx)], 16, 10,
        )
        with pytest.raises(ValidationError, match="multiplier"):
            validate(spec)

    def test_non_attracting_rejected(self, ctx):
        P2 = Polynomial(ctx, [0, 2, 1])
        spec = SystemSpec(
            ctx, [P2, P2], [ctx.zero(), ctx.zero()],
            [ctx.integer(3), ctx.integer(3)], [diag_generator(ctx)], 16, 10,
        )
        with pytest.raises(ValidationError):
            validate(spec)

    def test_unreachable_start_rejected(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(1), ctx.integer(3)], [diag_generator(ctx)], n_max=5)
        with pytest.raises(ValidationError, match="isometry"):
            validate(spec)

    def test_needs_two_coordinates(self, ctx, P):
        spec = SystemSpec(ctx, [P], [ctx.zero()], [ctx.integer(3)],
                          [MultivariatePoly(ctx, 1, {(1,): 1})], 16, 10)
        with pytest.raises(ValidationError):
            validate(spec)


class TestDirectScan:
    def test_diagonal_all_hits(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.integer(9)], [diag_generator(ctx)], n_max=25)
        v = validate(spec)
        assert direct_orbit_scan(v) == list(range(26))

    def test_split_valuations_no_hits(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(3), ctx.integer(9)], [diag_generator(ctx)], n_max=25)
        assert direct_orbit_scan(validate(spec)) == []

    def test_constructed_hit(self, ctx, P):
        x1 = ctx.integer(3)
        c = iterate(P, x1, 3)
        gen = MultivariatePoly(ctx, 2, {(1, 0): ctx.one(), (0, 0): -c})
        spec = make_spec(ctx, P, [x1, ctx.integer(9)], [gen], n_max=25)
        assert direct_orbit_scan(validate(spec)) == [3]


class TestLambdas:
    def test_equal_coordinates(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.integer(9)], [diag_generator(ctx)])
        perm, lams = compute_lambdas(validate(spec))
        assert perm == [0, 1]
        assert (lams[1] - ctx.one()).is_zero_to_precision

    def test_coordinate_at_fixed_point(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.zero()], [diag_generator(ctx)])
        perm, lams = compute_lambdas(validate(spec))
        assert lams[1].is_exact_zero

    def test_reindexing_picks_largest_log(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.integer(3)], [diag_generator(ctx)])
        perm, lams = compute_lambdas(validate(spec))
        assert perm == [1, 0]  # second coordinate has the smaller valuation
        assert lams[0].valuation == 1
        assert (lams[1] - ctx.one()).is_zero_to_precision

    def test_independence_of_orbit_index(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(3), ctx.integer(9)], [diag_generator(ctx)])
        v = validate(spec)
        perm, lams = compute_lambdas(v)
        for shift in (1, 2, 5):
            v2 = copy.copy(v)
            adv = list(v.advanced_start)
            for _ in range(shift):
                adv = [Pm(z) for Pm, z in zip(v.spec.maps, adv)]
            v2.advanced_start = adv
            perm2, lams2 = compute_lambdas(v2)
            assert perm2 == perm
            assert all((a - b).is_zero_to_precision for a, b in zip(lams, lams2))


class TestBuildF:
    def test_diagonal_F_vanishes(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.integer(9)], [diag_generator(ctx)])
        v = validate(spec)
        perm, lams = compute_lambdas(v)
        F = build_F(v, spec.variety[0], perm[0], lams)
        assert F.is_certified_zero_through_order()

    def test_projection_generator(self, ctx, P):
        # f = X_1 alone: F = alpha_1 + w = w here
        gen = MultivariatePoly(ctx, 2, {(1, 0): 1})
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.integer(9)], [gen])
        v = validate(spec)
        perm, lams = compute_lambdas(v)
        F = build_F(v, gen, perm[0], lams)
        assert F.coefficient(0).is_zero_to_precision
        assert (F.coefficient(1) - ctx.one()).is_zero_to_precision

    def test_F_matches_orbit_values(self, ctx, P):
        # F(P_lead^n(x) - alpha) = f(orbit point) for n0 <= n <= n0 + 10
        P2 = Polynomial(ctx, [0, 3, 2, 1])
        gen = MultivariatePoly(ctx, 2, {(1, 0): 2, (0, 1): -5, (0, 0): 21})
        spec = SystemSpec(ctx, [P, P2], [ctx.zero(), ctx.zero()],
                          [ctx.integer(3), ctx.integer(9)], [gen], 32, 40)
        v = validate(spec)
        perm, lams = compute_lambdas(v)
        F = build_F(v, gen, perm[0], lams)
        lead = perm[0]
        alpha = v.linearizations[lead].fixed_point
        pts = list(v.advanced_start)
        for n in range(v.n0, v.n0 + 11):
            lhs = F.evaluate(pts[lead] - alpha)
            rhs = gen.evaluate(pts)
            assert (lhs - rhs).is_zero_to_precision, n
            pts = [Pm(z) for Pm, z in zip(spec.maps, pts)]


class TestAnalyze:
    def test_diagonal_invariant_candidate(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(9), ctx.integer(9)], [diag_generator(ctx)], n_max=30)
        r = analyze(spec)
        assert r.verdict == "invariant_candidate"
        assert r.direct_hits == list(range(31))

    def test_hyperplane_through_orbit_point(self, ctx, P):
        x1 = ctx.integer(3)
        c = iterate(P, x1, 3)
        gen = MultivariatePoly(ctx, 2, {(1, 0): ctx.one(), (0, 0): -c})
        spec = make_spec(ctx, P, [x1, ctx.integer(9)], [gen], n_max=30)
        r = analyze(spec)
        assert r.verdict == "finite"
        assert r.direct_hits == [3]
        assert r.bound_certified and r.bound >= 1
        assert r.complete

    def test_split_valuations_finite_no_hits(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.integer(3), ctx.integer(9)], [diag_generator(ctx)], n_max=30)
        r = analyze(spec)
        assert r.verdict == "finite"
        assert r.direct_hits == []
        assert r.bound_certified

    def test_degenerate_membership(self, ctx, P):
        spec = make_spec(ctx, P, [ctx.zero(), ctx.zero()], [diag_generator(ctx)], n_max=12)
        r = analyze(spec)
        assert r.verdict == "finite" and r.degenerate
        assert r.bound == 1 and r.direct_hits == list(range(13))
        gen_off = MultivariatePoly(ctx, 2, {(1, 0): 1, (0, 0): 7})
        spec2 = make_spec(ctx, P, [ctx.zero(), ctx.zero()], [gen_off], n_max=12)
        r2 = analyze(spec2)
        assert r2.bound == 0 and r2.direct_hits == []

    def test_reindexing_invariance(self, ctx, P):
        P2 = Polynomial(ctx, [0, 3, 2, 1])
        gen = MultivariatePoly(ctx, 2, {(1, 0): 1, (0, 1): -1})
        gen_swapped = MultivariatePoly(ctx, 2, {(0, 1): 1, (1, 0): -1})
        spec = SystemSpec(ctx, [P, P2], [ctx.zero(), ctx.zero()],
                          [ctx.integer(3), ctx.integer(9)], [gen], 32, 30)
        spec_swapped = SystemSpec(ctx, [P2, P], [ctx.zero(), ctx.zero()],
                                  [ctx.integer(9), ctx.integer(3)], [gen_swapped], 32, 30)
        r1, r2 = analyze(spec), analyze(spec_swapped)
        assert r1.verdict == r2.verdict
        assert r1.direct_hits == r2.direct_hits
        assert r1.reindexing == [0, 1] and r2.reindexing == [1, 0]

    def test_three_coordinates(self, ctx, P):
        P2 = Polynomial(ctx, [0, 3, 2, 1])
        P3 = Polynomial(ctx, [0, 3, 0, 0, 1])
        gen = MultivariatePoly(ctx, 3, {(1, 0, 0): 1, (0, 1, 0): -1, (0, 0, 1): 1})
        spec = SystemSpec(
            ctx, [P, P2, P3], [ctx.zero()] * 3,
            [ctx.integer(3), ctx.integer(9), ctx.integer(27)], [gen], 32, 30,
        )
        r = analyze(spec)
        assert r.verdict in ("finite", "inconclusive")
        hits = direct_orbit_scan(validate(spec), 30)
        assert r.direct_hits == hits

    def test_determinism(self, ctx, P):
        from padicdyn import render_report

        spec = make_spec(ctx, P, [ctx.integer(3), ctx.integer(9)], [diag_generator(ctx)], n_max=20)
        assert render_report(analyze(spec), spec) == render_report(analyze(spec), spec)
