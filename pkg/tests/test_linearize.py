"""Koenigs linearization: recursion values, functional equation, radii, isometries."""

import random

import pytest

from padicdyn import (
    PadicContext,
    Polynomial,
    TruncatedSeries,
    ValidationError,
    conjugate_to_origin,
    koenigs_coefficients,
    linearize,
    mutual_inversion_residual,
    verify_functional_equation,
)


@pytest.fixture(scope="module")
def c3():
    return PadicContext(3, 64)


@pytest.fixture(scope="module")
def c5():
    return PadicContext(5, 64)


def random_attracting_poly(ctx, rng, degree=None):
    """Multiplier p * unit, integral higher coefficients, fixed point 0."""
    p = ctx.prime
    deg = degree or rng.randint(2, 5)
    unit = rng.randint(1, p - 1)
    coeffs = [0, unit * p] + [rng.randint(-6, 6) for _ in range(deg - 2)]
    lead = rng.randint(1, 6)
    coeffs.append(lead)
    return Polynomial(ctx, coeffs)


class TestKoenigsCoefficients:
    def test_linear_map_gives_identity_series(self, c3):
        G = Polynomial(c3, [0, 3])
        e = koenigs_coefficients(G, 16)
        assert (e.coefficient(1) - c3.one()).is_zero_to_precision
        for n in range(2, 17):
            assert e.coefficient(n).is_exact_zero

    def test_c2_for_px_plus_x2(self, c3):
        G = Polynomial(c3, [0, 3, 1])
        e = koenigs_coefficients(G, 8)
        c2 = e.coefficient(2)
        assert c2.valuation == -1
        assert (c2 - c3.from_rational(1, 3**2 - 3)).is_zero_to_precision

    def test_c3_for_px_plus_x2(self, c3):
        # hand-unrolled recursion: (a1^3 - a1) c_3 = a_2 (c_1 c_2 + c_2 c_1)
        G = Polynomial(c3, [0, 3, 1])
        e = koenigs_coefficients(G, 8)
        c3_coeff = e.coefficient(3)
        expected = c3.from_rational(2, (3**2 - 3) * (3**3 - 3))
        assert (c3_coeff - expected).is_zero_to_precision
        assert c3_coeff.valuation == -2

    def test_headroom_enforced(self):
        ctx = PadicContext(3, 20)
        G = Polynomial(ctx, [0, 3, 1])
        with pytest.raises(ValidationError):
            koenigs_coefficients(G, 16)  # needs N > 16 + 8

    def test_rejects_unit_multiplier(self, c3):
        G = Polynomial(c3, [0, 2, 1])
        with pytest.raises(ValidationError):
            koenigs_coefficients(G, 8)

    def test_paper_valuation_bound(self, c3):
        rng = random.Random(61)
        for _ in range(8):
            P = random_attracting_poly(c3, rng)
            e = koenigs_coefficients(P, 20)
            s = P.coefficients[1].valuation + 1
            for n in range(2, 21):
                c = e.coefficient(n)
                if c.is_certified_nonzero:
                    assert c.valuation >= -n * s


class TestConjugation:
    def test_alpha_zero_unchanged(self, c3):
        P = Polynomial(c3, [0, 3, 1])
        G = conjugate_to_origin(P, c3.zero())
        for a, b in zip(P.coefficients, G.coefficients):
            assert (a - b).is_zero_to_precision

    def test_non_fixed_point_rejected(self, c3):
        P = Polynomial(c3, [0, 3, 1])
        with pytest.raises(ValidationError):
            conjugate_to_origin(P, c3.integer(1))

    def test_other_fixed_point_is_indifferent(self, c3):
        # P = pX + X^2 at alpha = 1 - p: G'(0) = 2 - p is a unit, rejected
        P = Polynomial(c3, [0, 3, 1])
        alpha = c3.integer(1 - 3)
        G = conjugate_to_origin(P, alpha)
        assert (G.coefficients[1] - c3.integer(2 - 3)).is_zero_to_precision
        with pytest.raises(ValidationError):
            linearize(P, alpha, 8)


class TestFunctionalEquation:
    def test_linear_map(self, c3):
        P = Polynomial(c3, [0, 3])
        lin = linearize(P, c3.zero(), 16)
        assert verify_functional_equation(lin).is_certified_zero_through_order()

    def test_px_plus_x2_T32(self, c3):
        P = Polynomial(c3, [0, 3, 1])
        lin = linearize(P, c3.zero(), 32)
        res = verify_functional_equation(lin)
        assert res.is_certified_zero_through_order()

    def test_random_polynomials(self, c5):
        rng = random.Random(67)
        for _ in range(6):
            P = random_attracting_poly(c5, rng)
            lin = linearize(P, c5.zero(), 20)
            assert verify_functional_equation(lin).is_certified_zero_through_order()

    def test_iterated_relation(self, c3):
        # applying G n times to E(X) equals E(a1^n X), n <= 5
        P = Polynomial(c3, [0, 3, 1])
        t = 20
        lin = linearize(P, c3.zero(), t)
        g_series = TruncatedSeries.from_coefficients(c3, P.coefficients, order=t)
        lhs = lin.exp_series
        for n in range(1, 6):
            lhs = g_series.compose(lhs)
            scaled_var = TruncatedSeries.variable(c3, t).scale(lin.multiplier**n)
            rhs = lin.exp_series.compose(scaled_var)
            diff = lhs - rhs
            assert diff.is_certified_zero_through_order(), n


class TestInversionAndIsometry:
    def test_mutual_inversion(self, c3):
        rng = random.Random(71)
        for _ in range(4):
            P = random_attracting_poly(c3, rng)
            lin = linearize(P, c3.zero(), 16)
            assert mutual_inversion_residual(lin).is_certified_zero_through_order()

    def test_isometry_radius_px_plus_x2(self, c3):
        P = Polynomial(c3, [0, 3, 1])
        lin = linearize(P, c3.zero(), 32)
        # one-step contraction needs v(b_2) + (2-1)m > v(a1): m >= 2
        assert lin.isometry_radius_valuation >= 2
        assert lin.isometry_radius_valuation >= lin.convergence_radius_valuation

    def test_sampled_isometry(self, c3):
        rng = random.Random(73)
        P = Polynomial(c3, [0, 3, 2, 1])
        lin = linearize(P, c3.zero(), 24)
        m0 = lin.isometry_radius_valuation
        for _ in range(100):
            v = rng.randint(m0, m0 + 6)
            unit = rng.randint(1, 3**5)
            while unit % 3 == 0:
                unit = rng.randint(1, 3**5)
            z = c3.integer(unit * 3**v)
            w = lin.log_of(z)
            assert w.valuation == v
            back = lin.exp_of(w)
            assert back.valuation == v
            assert (back - z).is_zero_to_precision

    def test_log_of_fixed_point_is_zero(self, c3):
        P = Polynomial(c3, [0, 3, 1])
        lin = linearize(P, c3.zero(), 16)
        assert lin.log_of(c3.zero()).is_zero_to_precision

    def test_argument_outside_ball_rejected(self, c3):
        P = Polynomial(c3, [0, 3, 1])
        lin = linearize(P, c3.zero(), 16)
        with pytest.raises(ValidationError):
            lin.log_of(c3.integer(1))


class TestConjugationIdentity:
    def test_log_of_image(self, c3):
        rng = random.Random(79)
        P = Polynomial(c3, [0, 3, 1])
        lin = linearize(P, c3.zero(), 24)
        m0 = lin.isometry_radius_valuation
        for _ in range(20):
            v = rng.randint(m0, m0 + 4)
            z = c3.integer(rng.choice([1, 2]) * 3**v)
            lhs = lin.log_of(P(z))
            rhs = lin.multiplier * lin.log_of(z)
            assert (lhs - rhs).is_zero_to_precision

    def test_log_of_iterates_up_to_20(self, c3):
        P = Polynomial(c3, [0, 3, 1])
        lin = linearize(P, c3.zero(), 24)
        z = c3.integer(27)
        w = lin.log_of(z)
        cur = z
        for n in range(1, 21):
            cur = P(cur)
            lhs = lin.log_of(cur)
            rhs = lin.multiplier**n * w
            assert (lhs - rhs).is_zero_to_precision, n

    def test_nonzero_fixed_point_cubic(self, c5):
        # a map with attracting fixed point away from 0
        P = Polynomial(c5, [5, 6, 2, 1])
        from padicdyn import find_fixed_points, ATTRACTING

        att = [f for f in find_fixed_points(P).points if f.classification == ATTRACTING]
        assert att
        lin = linearize(P, att[0].point, 16)
        assert verify_functional_equation(lin).is_certified_zero_through_order()
        assert mutual_inversion_residual(lin).is_certified_zero_through_order()
        m0 = lin.isometry_radius_valuation
        z = att[0].point + c5.integer(5**m0)
        lhs = lin.log_of(P(z))
        rhs = lin.multiplier * lin.log_of(z)
        assert (lhs - rhs).is_zero_to_precision
