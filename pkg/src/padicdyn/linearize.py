"""Koenigs linearization at an attracting fixed point over Q_p.

Given P with fixed point alpha and multiplier a1 = P'(alpha), 0 < |a1| < 1,
this module computes the exponential series E (linear coefficient 1) solving
the Schroeder conjugation G(E(X)) = E(a1*X) for the conjugate
G(X) = P(X + alpha) - alpha, its inverse L (the logarithm, solving
L(G(X)) = a1*L(X)), and certified radii:

* a convergence valuation rho for E, from the coefficient bound
  v(c_n) >= -n*(v(a1) + w + 1), where w accounts for non-integral higher
  coefficients of G;
* an isometry valuation m0 >= rho such that on {v(z - alpha) >= m0} the maps
  exp/log are mutually inverse isometries and G maps the ball into itself.

Both coefficient recursions divide by a1^n - a1 = a1 * (a1^{n-1} - 1); since
v(a1) >= 1 the second factor is a unit, so every division is an exact unit
division after factoring out a1.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor

from . import _core
from .errors import PrecisionError, ValidationError
from .padic import Ball, INF_BOUND, PadicNumber
from .series import TailBound, TruncatedSeries
from .dynamics import Polynomial

_HEADROOM = 8


def conjugate_to_origin(P: Polynomial, alpha: PadicNumber) -> Polynomial:
    """G(X) = P(X + alpha) - alpha; requires P(alpha) = alpha to precision."""
    b = P.shift_argument(alpha)
    b[0] = b[0] - alpha
    if not b[0].is_zero_to_precision:
        raise ValidationError(
            "alpha is not a fixed point at working precision:"
            f" v(P(alpha) - alpha) = {b[0].valuation}"
        )
    return Polynomial(P.ctx, b)


def _integrality_defect(G: Polynomial) -> int:
    """w = max(0, -min v(b_i), i >= 2): zero when all higher coefficients are integral."""
    w = 0
    for c in G.coefficients[2:]:
        if c.is_exact_zero:
            continue
        lb = c.valuation_lower_bound
        if -lb > w:
            w = -lb
    return w


def _check_multiplier(G: Polynomial) -> PadicNumber:
    a1 = G.coefficients[1]
    if not a1.is_certified_nonzero:
        raise ValidationError("multiplier is zero to precision (superattracting): not supported")
    if a1.valuation < 1:
        raise ValidationError(
            "multiplier is a unit (indifferent fixed point): the attracting"
            " hypothesis 0 < |P'(alpha)| < 1 fails"
        )
    return a1


def _check_headroom(G: Polynomial, order: int):
    a1 = G.coefficients[1]
    n = G.ctx.working_precision
    need = order * a1.valuation + _HEADROOM
    if n <= need:
        raise ValidationError(
            f"working precision {n} too small: need > T*v(a1) + {_HEADROOM} = {need}"
        )


def koenigs_coefficients(G: Polynomial, order: int) -> TruncatedSeries:
    """Normalized linearizing series E for G: c_1 = 1 and, for n >= 2,

        (a1^n - a1) c_n = sum_{i=2}^{r} a_i * sum_{j_1+...+j_i=n, j>=1} prod c_j.

    Powers of E are carried incrementally, so each degree costs O(r*n)
    coefficient products.  The attached tail bound is
    v(c_n) >= -n*(v(a1) + w + 1) with w the integrality defect of G.
    """
    ctx = G.ctx
    a1 = _check_multiplier(G)
    _check_headroom(G, order)
    p = ctx.prime
    r = G.degree
    t = order
    one = ctx.one()

    ev = [INF_BOUND] * (t + 1)
    eu = [0] * (t + 1)
    ek = [0] * (t + 1)
    if t >= 1:
        ev[1], eu[1], ek[1] = one._v, one._u, one._k
    # pows[i] = coefficient arrays of E**i for 2 <= i <= r (E**1 is E itself)
    pows = {
        i: ([INF_BOUND] * (t + 1), [0] * (t + 1), [0] * (t + 1)) for i in range(2, r + 1)
    }
    a1pow = a1  # a1^(n-1) while solving degree n
    for n in range(2, t + 1):
        prev = (ev, eu, ek)
        for i in range(2, r + 1):
            pv, pu, pk = pows[i]
            v, u, k = _core.conv_at(p, ev, eu, ek, prev[0], prev[1], prev[2], n, 1, n - i + 1)
            pv[n], pu[n], pk[n] = v, u, k
            prev = pows[i]
        sv, su, sk = INF_BOUND, 0, 0
        for i in range(2, r + 1):
            ai = G.coefficients[i]
            if ai.is_exact_zero:
                continue
            pv, pu, pk = pows[i]
            wv, wu, wk = _core.tr_mul(p, ai._v, ai._u, ai._k, pv[n], pu[n], pk[n])
            sv, su, sk = _core.tr_add(p, sv, su, sk, wv, wu, wk)
        # divide by a1^n - a1 = a1 * (a1^{n-1} - 1), the second factor a unit
        unit = a1pow - one
        v, u, k = _core.tr_div(p, sv, su, sk, a1._v, a1._u, a1._k)
        v, u, k = _core.tr_div(p, v, u, k, unit._v, unit._u, unit._k)
        ev[n], eu[n], ek[n] = v, u, k
        a1pow = a1pow * a1
    s = a1.valuation + _integrality_defect(G) + 1
    return TruncatedSeries(ctx, t, ev, eu, ek, TailBound(Fraction(-s), Fraction(0)))


def inverse_koenigs_coefficients(G: Polynomial, order: int) -> TruncatedSeries:
    """Logarithm series L for G, solving L(G(X)) = a1*L(X) with l_1 = 1:

        (a1^n - a1) l_n = -sum_{m=1}^{n-1} l_m * [X^n] G^m.

    Tail bound v(l_n) >= (1-n)*(v(a1) + w), by induction on this recursion.
    """
    ctx = G.ctx
    a1 = _check_multiplier(G)
    _check_headroom(G, order)
    p = ctx.prime
    t = order
    one = ctx.one()

    # Powers of G as coefficient arrays truncated at t, constant term treated
    # as exactly zero (it is zero to working precision by construction).
    gl = min(G.degree, t) + 1
    gv = [INF_BOUND] + [c._v for c in G.coefficients[1:gl]]
    gu = [0] + [c._u for c in G.coefficients[1:gl]]
    gk = [0] + [c._k for c in G.coefficients[1:gl]]
    pad = t + 1 - len(gv)
    gpow = [None, (gv + [INF_BOUND] * pad, gu + [0] * pad, gk + [0] * pad)]
    for m in range(2, t):
        pv, pu, pk = gpow[m - 1]
        gpow.append(_core.series_mul(p, pv, pu, pk, gv, gu, gk, t))

    lv = [INF_BOUND] * (t + 1)
    lu = [0] * (t + 1)
    lk = [0] * (t + 1)
    if t >= 1:
        lv[1], lu[1], lk[1] = one._v, one._u, one._k
    a1pow = a1
    for n in range(2, t + 1):
        sv, su, sk = INF_BOUND, 0, 0
        for m in range(1, n):
            if lu[m] == 0 and lv[m] >= INF_BOUND:
                continue
            pv, pu, pk = gpow[m]
            if pu[n] == 0 and pv[n] >= INF_BOUND:
                continue
            wv, wu, wk = _core.tr_mul(p, lv[m], lu[m], lk[m], pv[n], pu[n], pk[n])
            sv, su, sk = _core.tr_add(p, sv, su, sk, wv, wu, wk)
        unit = a1pow - one
        v, u, k = _core.tr_div(p, sv, su, sk, a1._v, a1._u, a1._k)
        v, u, k = _core.tr_div(p, v, u, k, unit._v, unit._u, unit._k)
        v, u, k = _core.tr_neg(p, v, u, k)
        lv[n], lu[n], lk[n] = v, u, k
        a1pow = a1pow * a1
    sigma = a1.valuation + _integrality_defect(G)
    return TruncatedSeries(ctx, t, lv, lu, lk, TailBound(Fraction(-sigma), Fraction(sigma)))


def _poly_as_series(P: Polynomial, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coefficients(P.ctx, P.coefficients, order=order)


class Linearization:
    """Koenigs linearization data at an attracting fixed point."""

    __slots__ = (
        "base_poly",
        "fixed_point",
        "multiplier",
        "conjugate_poly",
        "exp_series",
        "log_series",
        "convergence_radius_valuation",
        "isometry_radius_valuation",
    )

    def __init__(self, base_poly, fixed_point, multiplier, conjugate_poly,
                 exp_series, log_series, convergence_radius_valuation,
                 isometry_radius_valuation):
        self.base_poly = base_poly
        self.fixed_point = fixed_point
        self.multiplier = multiplier
        self.conjugate_poly = conjugate_poly
        self.exp_series = exp_series
        self.log_series = log_series
        self.convergence_radius_valuation = convergence_radius_valuation
        self.isometry_radius_valuation = isometry_radius_valuation

    @property
    def isometry_ball(self) -> Ball:
        return Ball(self.fixed_point, self.isometry_radius_valuation)

    def log_of(self, z: PadicNumber) -> PadicNumber:
        """L(z - alpha); requires z in the isometry ball."""
        d = z - self.fixed_point
        self._require_in_ball(d)
        return self.log_series.evaluate(d)

    def exp_of(self, w: PadicNumber) -> PadicNumber:
        """alpha + E(w); requires v(w) >= the isometry radius."""
        self._require_in_ball(w)
        return self.fixed_point + self.exp_series.evaluate(w)

    def _require_in_ball(self, d: PadicNumber):
        m0 = self.isometry_radius_valuation
        if d.is_certified_nonzero:
            if d.valuation < m0:
                raise ValidationError(
                    f"argument outside the isometry ball: v = {d.valuation} < {m0}"
                )
        elif d.zero_bound < m0:
            raise PrecisionError(
                f"ball membership undecidable: v >= {d.zero_bound} < {m0}"
            )

    def __repr__(self):
        return (
            f"Linearization(T={self.exp_series.order},"
            f" v(a1)={self.multiplier.valuation},"
            f" m0={self.isometry_radius_valuation})"
        )


def isometry_radius(exp_series: TruncatedSeries, G: Polynomial) -> int:
    """Smallest integer m0 such that, on {v >= m0}:

    * every exp term beyond the linear one is strictly dominated:
      v(c_n) + n*m0 > m0 for computed n, and for the tail via its affine bound;
    * G contracts by exactly |a1|: v(b_i) + (i-1)*m0 > v(a1) for i >= 2.

    Both maps are then isometries on the ball and G maps it into itself.
    """
    a1 = G.coefficients[1]
    v1 = a1.valuation
    m0 = 1
    for n in range(2, exp_series.order + 1):
        c = exp_series.coefficient(n)
        if c.is_exact_zero:
            continue
        lb = c.valuation_lower_bound
        need = floor(Fraction(-lb, n - 1)) + 1
        if need > m0:
            m0 = need
    tail = exp_series.tail
    if not tail.is_infinite:
        t = exp_series.order
        # smallest m with (m + slope)*n + (offset - m) > 0 for all n > t
        need = floor(Fraction(-tail.slope * (t + 1) - tail.offset, t)) + 1
        if need > m0:
            m0 = need
        if m0 + tail.slope <= 0:
            m0 = floor(-tail.slope) + 1
    for i in range(2, G.degree + 1):
        bi = G.coefficients[i]
        if bi.is_exact_zero:
            continue
        lb = bi.valuation_lower_bound
        need = floor(Fraction(v1 - lb, i - 1)) + 1
        if need > m0:
            m0 = need
    return m0


def linearize(P: Polynomial, alpha: PadicNumber, order: int) -> Linearization:
    """Build the full linearization of P at the attracting fixed point alpha."""
    G = conjugate_to_origin(P, alpha)
    a1 = _check_multiplier(G)
    exp_series = koenigs_coefficients(G, order)
    log_series = inverse_koenigs_coefficients(G, order)
    rho = a1.valuation + _integrality_defect(G) + 2
    m0 = isometry_radius(exp_series, G)
    if m0 < rho:
        m0 = rho
    return Linearization(P, alpha, a1, G, exp_series, log_series, rho, m0)


def verify_functional_equation(lin: Linearization) -> TruncatedSeries:
    """Residual G(E(X)) - E(a1*X), truncated at T.

    A correct linearization leaves every coefficient zero to its certified
    precision; a nonzero residual is a verification failure for the caller to
    report, not an exception.
    """
    t = lin.exp_series.order
    g_series = _poly_as_series(lin.conjugate_poly, t)
    lhs = g_series.compose(lin.exp_series)
    scaled = TruncatedSeries.variable(lin.base_poly.ctx, t).scale(lin.multiplier)
    rhs = lin.exp_series.compose(scaled)
    return lhs - rhs


def mutual_inversion_residual(lin: Linearization) -> TruncatedSeries:
    """L(E(X)) - X truncated at T (certified zero for a correct pair)."""
    t = lin.exp_series.order
    comp = lin.log_series.compose(lin.exp_series)
    return comp - TruncatedSeries.variable(lin.base_poly.ctx, t)
