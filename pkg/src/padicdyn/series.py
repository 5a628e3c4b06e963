"""Truncated power series over Q_p with certified tail bounds.

A :class:`TruncatedSeries` stores coefficients 0..T exactly (as capped-precision
p-adic numbers) together with an affine *tail bound* ``v(c_n) >= slope*n +
offset`` valid for every ``n > T`` of the true underlying function.  The bound
is what turns a truncation into a certificate: evaluation inside a ball returns
a value with a proven error valuation, and Newton-polygon zero counting can
assert that no unseen coefficient alters the relevant hull segment.

Zero counting implements the standard nonarchimedean statement (zeros of
valuation t correspond to polygon slopes -t, counted by horizontal length);
that statement is classical background, sharpened here into an explicit
certification rule over inexact coefficients and the affine tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _core
from .errors import PrecisionError
from .padic import Ball, INF_BOUND, PadicNumber

_INF = math.inf


@dataclass(frozen=True)
class TailBound:
    """Affine lower bound slope*n + offset on v(c_n) for all n > T.

    ``offset = inf`` means the tail is identically zero (a polynomial).
    """

    slope: Fraction
    offset: Fraction | float

    @property
    def is_infinite(self) -> bool:
        return self.offset == _INF

    def bound_at(self, n: int):
        if self.is_infinite:
            return _INF
        return self.slope * n + self.offset


ZERO_TAIL = TailBound(Fraction(0), _INF)


@dataclass(frozen=True)
class ZeroCount:
    """Result of certified zero counting: a count and whether it is proven."""

    count: int
    certified: bool
    reason: str | None = None


class TruncatedSeries:
    """Power series over Q_p truncated at degree T with a certified tail bound.

    Coefficients are held as raw (valuation, unit, precision) triples so the
    convolution kernels can run without object traffic; ``coefficient(i)``
    wraps them back into :class:`PadicNumber`.
    """

    __slots__ = ("ctx", "_t", "_v", "_u", "_k", "tail")

    def __init__(self, ctx, order, vals, units, precs, tail=ZERO_TAIL):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if not (len(vals) == len(units) == len(precs) == order + 1):
            raise ValueError("coefficient arrays must have length order + 1")
        self.ctx = ctx
        self._t = order
        self._v = vals
        self._u = units
        self._k = precs
        self.tail = tail

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_coefficients(cls, ctx, coefficients, order=None, tail=ZERO_TAIL):
        """Series with the given low-order coefficients (ints are coerced)."""
        coeffs = [c if isinstance(c, PadicNumber) else ctx.integer(c) for c in coefficients]
        if order is None:
            order = len(coeffs) - 1
        vals, units, precs = [], [], []
        for i in range(order + 1):
            if i < len(coeffs):
                c = coeffs[i]
                vals.append(c._v)
                units.append(c._u)
                precs.append(c._k)
            else:
                vals.append(INF_BOUND)
                units.append(0)
                precs.append(0)
        return cls(ctx, order, vals, units, precs, tail)

    @classmethod
    def zero(cls, ctx, order):
        n = order + 1
        return cls(ctx, order, [INF_BOUND] * n, [0] * n, [0] * n)

    @classmethod
    def constant(cls, ctx, value, order):
        return cls.from_coefficients(ctx, [value], order=order)

    @classmethod
    def variable(cls, ctx, order):
        """The series X."""
        return cls.from_coefficients(ctx, [0, 1], order=order)

    # -- access ---------------------------------------------------------------

    @property
    def order(self) -> int:
        return self._t

    def coefficient(self, i: int) -> PadicNumber:
        if not 0 <= i <= self._t:
            raise IndexError(f"coefficient index {i} outside 0..{self._t}")
        return PadicNumber(self.ctx, self._v[i], self._u[i], self._k[i])

    def coefficients(self) -> list[PadicNumber]:
        return [self.coefficient(i) for i in range(self._t + 1)]

    def is_certified_zero_through_order(self) -> bool:
        """Every computed coefficient vanishes to its carried precision."""
        return all(u == 0 for u in self._u)

    def _effective_length(self) -> int:
        """Array length after dropping trailing exact zeros (min 1)."""
        n = self._t + 1
        while n > 1 and self._u[n - 1] == 0 and self._v[n - 1] >= INF_BOUND:
            n -= 1
        return n

    def __repr__(self):
        head = ", ".join(repr(self.coefficient(i)) for i in range(min(3, self._t + 1)))
        return f"TruncatedSeries(T={self._t}, [{head}, ...])"

    # -- envelopes and tail propagation ----------------------------------------

    def _envelope(self, start: int):
        """Affine (slope, offset) with v(c_n) >= slope*n + offset for n >= start.

        Uses the valuation lower bound of each computed coefficient and the tail
        bound beyond T.  offset may be inf (series is zero from `start` on).
        """
        if self.tail.is_infinite:
            slope = Fraction(0)
            offset = _INF
        else:
            slope = self.tail.slope
            offset = self.tail.offset
        for i in range(start, self._t + 1):
            if self._u[i] == 0 and self._v[i] >= INF_BOUND:
                continue
            cand = Fraction(self._v[i]) - slope * i
            if cand < offset:
                offset = cand
        return slope, offset

    def truncate(self, order: int) -> "TruncatedSeries":
        """Drop to a lower truncation order, folding dropped coefficients into the tail."""
        if order >= self._t:
            return self
        slope = self.tail.slope if not self.tail.is_infinite else Fraction(0)
        offset = self.tail.offset
        for i in range(order + 1, self._t + 1):
            if self._u[i] == 0 and self._v[i] >= INF_BOUND:
                continue
            cand = Fraction(self._v[i]) - slope * i
            if cand < offset:
                offset = cand
        tail = ZERO_TAIL if offset == _INF else TailBound(slope, offset)
        n = order + 1
        return TruncatedSeries(self.ctx, order, self._v[:n], self._u[:n], self._k[:n], tail)

    # -- ring operations --------------------------------------------------------

    def _check_compatible(self, other):
        if self.ctx != other.ctx:
            raise ValueError("series from different p-adic contexts")

    def __add__(self, other):
        if isinstance(other, (PadicNumber, int)):
            c = other if isinstance(other, PadicNumber) else self.ctx.integer(other)
            vals = list(self._v)
            units = list(self._u)
            precs = list(self._k)
            v, u, k = _core.tr_add(self.ctx.prime, vals[0], units[0], precs[0], c._v, c._u, c._k)
            vals[0], units[0], precs[0] = v, u, k
            return TruncatedSeries(self.ctx, self._t, vals, units, precs, self.tail)
        self._check_compatible(other)
        t = min(self._t, other._t)
        a, b = self.truncate(t), other.truncate(t)
        p = self.ctx.prime
        vals, units, precs = [], [], []
        for i in range(t + 1):
            v, u, k = _core.tr_add(p, a._v[i], a._u[i], a._k[i], b._v[i], b._u[i], b._k[i])
            vals.append(v)
            units.append(u)
            precs.append(k)
        if a.tail.is_infinite and b.tail.is_infinite:
            tail = ZERO_TAIL
        elif a.tail.is_infinite:
            tail = b.tail
        elif b.tail.is_infinite:
            tail = a.tail
        else:
            tail = TailBound(min(a.tail.slope, b.tail.slope), min(a.tail.offset, b.tail.offset))
        return TruncatedSeries(self.ctx, t, vals, units, precs, tail)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.prime
        vals, units, precs = [], [], []
        for i in range(self._t + 1):
            v, u, k = _core.tr_neg(p, self._v[i], self._u[i], self._k[i])
            vals.append(v)
            units.append(u)
            precs.append(k)
        return TruncatedSeries(self.ctx, self._t, vals, units, precs, self.tail)

    def __sub__(self, other):
        if isinstance(other, (PadicNumber, int)):
            c = other if isinstance(other, PadicNumber) else self.ctx.integer(other)
            return self + (-c)
        return self + (-other)

    def scale(self, scalar: PadicNumber) -> "TruncatedSeries":
        """Multiply every coefficient by a scalar."""
        if not isinstance(scalar, PadicNumber):
            scalar = self.ctx.integer(scalar)
        if scalar.is_exact_zero:
            return TruncatedSeries.zero(self.ctx, self._t)
        p = self.ctx.prime
        vals, units, precs = [], [], []
        for i in range(self._t + 1):
            v, u, k = _core.tr_mul(p, self._v[i], self._u[i], self._k[i], scalar._v, scalar._u, scalar._k)
            vals.append(v)
            units.append(u)
            precs.append(k)
        if self.tail.is_infinite:
            tail = ZERO_TAIL
        else:
            tail = TailBound(self.tail.slope, self.tail.offset + scalar.valuation_lower_bound)
        return TruncatedSeries(self.ctx, self._t, vals, units, precs, tail)

    def _degree_bound(self):
        """Largest index with a not-exactly-zero coefficient, or None."""
        for i in range(self._t, -1, -1):
            if not (self._u[i] == 0 and self._v[i] >= INF_BOUND):
                return i
        return None

    def __mul__(self, other):
        if isinstance(other, (PadicNumber, int)):
            return self.scale(other)
        self._check_compatible(other)
        t = min(self._t, other._t)
        a, b = self.truncate(t), other.truncate(t)
        na = a._effective_length()
        nb = b._effective_length()
        vals, units, precs = _core.series_mul(
            self.ctx.prime, a._v[:na], a._u[:na], a._k[:na], b._v[:nb], b._u[:nb], b._k[:nb], t
        )
        if a.tail.is_infinite and b.tail.is_infinite:
            da, db = a._degree_bound(), b._degree_bound()
            if da is None or db is None or da + db <= t:
                tail = ZERO_TAIL
            else:
                sa, oa = a._envelope(0)
                sb, ob = b._envelope(0)
                tail = TailBound(min(sa, sb), oa + ob)
        else:
            sa, oa = a._envelope(0)
            sb, ob = b._envelope(0)
            if oa == _INF or ob == _INF:
                tail = ZERO_TAIL
            else:
                tail = TailBound(min(sa, sb), oa + ob)
        return TruncatedSeries(self.ctx, t, vals, units, precs, tail)

    __rmul__ = __mul__

    # -- composition and inversion ----------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Truncated composition self(inner(X)).

        Requires an exactly-zero constant term in ``inner`` unless ``self`` is a
        polynomial (infinite tail): for a true series, a nonzero inner constant
        would let discarded outer coefficients feed back into low degrees.
        """
        self._check_compatible(inner)
        inner_c0_exact_zero = inner._u[0] == 0 and inner._v[0] >= INF_BOUND
        if not self.tail.is_infinite and not inner_c0_exact_zero:
            raise ValueError("inner constant term must be exactly zero for series composition")
        t = min(self._t, inner._t)
        inner_t = inner.truncate(t)
        # Horner over the series ring, highest coefficient first.
        acc = TruncatedSeries.constant(self.ctx, self.coefficient(self._t), t)
        for i in range(self._t - 1, -1, -1):
            acc = acc * inner_t
            acc = acc + self.coefficient(i)
        # Tail of the true composition from the envelopes.
        s_in, b_in = inner_t._envelope(1 if inner_c0_exact_zero else 0)
        s_o, b_o = self._envelope(1)
        d_self = self._degree_bound()
        d_inner = inner_t._degree_bound()
        if b_o == _INF or b_in == _INF:
            # outer constant, or inner identically zero: composition is exact
            tail = ZERO_TAIL
        elif (
            self.tail.is_infinite
            and inner_t.tail.is_infinite
            and d_self * (d_inner or 0) <= t
        ):
            tail = ZERO_TAIL  # polynomial composed with polynomial, nothing truncated
        else:
            s = s_o + b_in
            if self.tail.is_infinite:
                tail = TailBound(s_in, b_o + min(s, s * d_self))
            elif s >= 0:
                tail = TailBound(s_in, b_o + s)
            else:
                tail = TailBound(s_in + s, b_o)
        return TruncatedSeries(self.ctx, t, acc._v, acc._u, acc._k, tail)

    def multiplicative_inverse(self) -> "TruncatedSeries":
        """Reciprocal series 1/self; the constant term must be a unit."""
        c0 = self.coefficient(0)
        if not c0.is_certified_nonzero:
            raise ValueError("reciprocal requires a certified nonzero constant term")
        p = self.ctx.prime
        t = self._t
        g0 = self.ctx.one() / c0
        gv = [g0._v]
        gu = [g0._u]
        gk = [g0._k]
        for n in range(1, t + 1):
            sv, su, sk = _core.conv_at(p, self._v, self._u, self._k, gv, gu, gk, n, 1, n)
            v, u, k = _core.tr_mul(p, sv, su, sk, g0._v, g0._u, g0._k)
            v, u, k = _core.tr_neg(p, v, u, k)
            gv.append(v)
            gu.append(u)
            gk.append(k)
        # From g_n = -(1/c0) * sum_{i>=1} f_i g_{n-i} and envelope
        # v(f_i) >= a*i + b (i >= 1): v(g_n) >= (a - e)*n - v(c0) with
        # e = max(0, v(c0) - b).
        s_f, b_f = self._envelope(1)
        v0 = c0.valuation
        if b_f == _INF:
            tail = ZERO_TAIL  # reciprocal of a constant is exact
        else:
            e = max(Fraction(0), Fraction(v0) - b_f)
            tail = TailBound(s_f - e, Fraction(-v0))
        return TruncatedSeries(self.ctx, t, gv, gu, gk, tail)

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse: g with self(g(X)) = X = g(self(X)) to order T.

        Requires constant term zero (to precision) and a unit linear
        coefficient.  Solved degree by degree from the coefficient recursion of
        f(g) = X, carrying powers of g incrementally.
        """
        if self._t < 1:
            raise ValueError("reversion needs truncation order >= 1")
        if not self.coefficient(0).is_zero_to_precision:
            raise ValueError("reversion requires a zero constant term")
        c1 = self.coefficient(1)
        if not c1.is_certified_nonzero or c1.valuation != 0:
            raise ValueError("reversion requires a unit linear coefficient")
        p = self.ctx.prime
        t = self._t
        one = self.ctx.one()
        g1 = one / c1
        # gpow[m] holds the coefficient arrays of g**m, filled for indices < n
        # when degree n is being solved; gpow[1] is g itself.
        zero_row = lambda: ([INF_BOUND] * (t + 1), [0] * (t + 1), [0] * (t + 1))
        gpow = [None] + [zero_row() for _ in range(t)]
        gv, gu, gk = gpow[1]
        gv[1], gu[1], gk[1] = g1._v, g1._u, g1._k
        for n in range(2, t + 1):
            # new entries of g**m at degree n use only g_j with j <= n-m+1 < n
            for m in range(2, n + 1):
                pv, pu, pk = gpow[m - 1]
                v, u, k = _core.conv_at(p, gv, gu, gk, pv, pu, pk, n, 1, n - m + 1)
                gpow[m][0][n], gpow[m][1][n], gpow[m][2][n] = v, u, k
            # 0 = sum_m f_m [g^m]_n  (n > 1), solve for g_n
            sv, su, sk = INF_BOUND, 0, 0
            top = min(n, self._t)
            for m in range(2, top + 1):
                fv, fu, fk = self._v[m], self._u[m], self._k[m]
                if fu == 0 and fv >= INF_BOUND:
                    continue
                pv, pu, pk = gpow[m]
                wv, wu, wk = _core.tr_mul(p, fv, fu, fk, pv[n], pu[n], pk[n])
                sv, su, sk = _core.tr_add(p, sv, su, sk, wv, wu, wk)
            v, u, k = _core.tr_div(p, sv, su, sk, c1._v, c1._u, c1._k) if su != 0 else (sv, su, sk)
            v, u, k = _core.tr_neg(p, v, u, k)
            gv[n], gu[n], gk[n] = v, u, k
        # Tail: from the same recursion, with envelope v(f_m) >= a*m + b for
        # m >= 2 one gets v(g_n) >= A*n + B with B = max(-a, -2a-b), A = -B
        # (induction over the coefficient recursion; always feasible).
        a, b = self._envelope(2)
        if b == _INF:
            tail = ZERO_TAIL  # self is exactly linear, so is its inverse
        else:
            bb = max(-a, -2 * a - b)
            tail = TailBound(-bb, bb)
        return TruncatedSeries(self.ctx, t, gv, gu, gk, tail)

    # -- analytic operations ------------------------------------------------------

    def evaluate(self, z: PadicNumber, domain: Ball | None = None,
                 min_precision: int | None = None) -> PadicNumber:
        """Sum of the computed terms with a certified absolute error valuation.

        The tail bound must dominate at v(z) (slope + v(z) > 0), otherwise the
        truncation is insufficient and a PrecisionError asks for a larger T.
        """
        if domain is not None and not domain.contains(z):
            raise ValueError("argument outside the certified domain ball")
        vz = z.valuation_lower_bound
        if self.tail.is_infinite:
            err = None
        else:
            s = self.tail.slope + vz
            if s <= 0:
                raise PrecisionError(
                    f"tail not dominated at v(z) >= {vz}: raise the truncation order"
                )
            err = math.ceil(s * (self._t + 1) + self.tail.offset)
        if min_precision is not None and err is not None and err < min_precision:
            raise PrecisionError(
                f"certified error valuation {err} below requested {min_precision}"
            )
        p = self.ctx.prime
        av, au, ak = self.coefficient(self._t)._v, self.coefficient(self._t)._u, self.coefficient(self._t)._k
        for i in range(self._t - 1, -1, -1):
            av, au, ak = _core.tr_mul(p, av, au, ak, z._v, z._u, z._k)
            av, au, ak = _core.tr_add(p, av, au, ak, self._v[i], self._u[i], self._k[i])
        result = PadicNumber(self.ctx, av, au, ak)
        if err is not None:
            result = _cap_absolute_precision(result, err)
        return result

    def newton_polygon(self) -> list[tuple[Fraction, int]]:
        """Lower convex hull of (n, v(c_n)) over certified-nonzero coefficients.

        Returned as consecutive (slope, horizontal length) pairs, slopes
        ascending.  Raises PrecisionError when every computed coefficient is
        indistinguishable from zero.
        """
        pts = [(i, self._v[i]) for i in range(self._t + 1) if self._u[i] != 0]
        if not pts:
            raise PrecisionError("all computed coefficients indistinguishable from zero")
        hull = _lower_hull(pts)
        out = []
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            out.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
        return out

    def count_zeros_in_ball(self, radius_valuation) -> ZeroCount:
        """Certified count of zeros z with v(z) >= m, multiplicity included.

        The count is the abscissa of the hull vertex where slopes first exceed
        -m.  It is certified only when every coefficient that is merely
        zero-to-precision, and the whole tail, provably cannot move that
        vertex: their bounds must stay on or above the ray of slope -m through
        it (strictly above to its right).
        """
        if isinstance(radius_valuation, Ball):
            ball = radius_valuation
            if not ball.center.is_zero_to_precision:
                raise ValueError("zero counting expects a ball centered at 0")
            m = ball.radius_valuation
        else:
            m = int(radius_valuation)
        pts = []
        uncertain = []
        for i in range(self._t + 1):
            if self._u[i] != 0:
                pts.append((i, self._v[i]))
            elif self._v[i] < INF_BOUND:
                uncertain.append((i, self._v[i]))
        if not pts:
            raise PrecisionError("no certified nonzero coefficient up to the truncation order")
        hull = _lower_hull(pts)
        n_m, y_m = hull[0]
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if Fraction(y2 - y1, x2 - x1) <= -m:
                n_m, y_m = x2, y2
            else:
                break
        certified = True
        reason = None
        for j, b in uncertain:
            if j <= n_m:
                ok = b >= y_m + m * (n_m - j)
            else:
                ok = b > y_m - m * (j - n_m)
            if not ok:
                certified = False
                reason = (
                    f"coefficient {j} is only bounded below by v >= {b}, which"
                    f" could alter the slope-{-m} hull segment"
                )
                break
        if certified and not self.tail.is_infinite:
            s = self.tail.slope + m
            if s <= 0:
                certified = False
                reason = (
                    f"tail slope {self.tail.slope} does not dominate the ball"
                    f" v >= {m}: raise the truncation order"
                )
            else:
                phi = s * (self._t + 1) + self.tail.offset - y_m - m * n_m
                if phi <= 0:
                    certified = False
                    reason = (
                        "tail bound admits coefficients below the counting ray"
                        f" (margin {phi} at degree {self._t + 1})"
                    )
        return ZeroCount(n_m, certified, reason)


def _cap_absolute_precision(x: PadicNumber, bound: int) -> PadicNumber:
    """Forget digits beyond absolute precision `bound` (certified-error capping)."""
    if x._u == 0:
        return PadicNumber(x.ctx, min(x._v, bound), 0, 0)
    if x._v >= bound:
        return PadicNumber(x.ctx, bound, 0, 0)
    if x._v + x._k <= bound:
        return x
    k = bound - x._v
    p = x.ctx.prime
    return PadicNumber(x.ctx, x._v, x._u % p**k, k)


def _lower_hull(points):
    """Lower convex hull of (x, y) points sorted by strictly increasing x."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull
