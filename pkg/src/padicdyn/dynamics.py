"""Univariate polynomial dynamics over Q_p.

Iteration, fixed-point search by residue scan + Hensel (Newton) lifting,
multiplier classification, and the certified contraction radius around an
attracting fixed point: the ball on which one application of the map scales
distances by exactly |multiplier|.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .padic import PadicContext, PadicNumber

ATTRACTING = "attracting"
SUPERATTRACTING = "superattracting"
INDIFFERENT = "indifferent"


class Polynomial:
    """Exact univariate polynomial over Q_p, degree >= 1.

    Constants only arise internally (as derivatives of linear maps) and are
    admitted through ``allow_constant``; dynamics always takes degree >= 1.
    """

    __slots__ = ("ctx", "coefficients")

    def __init__(self, ctx: PadicContext, coefficients, allow_constant=False):
        coeffs = [c if isinstance(c, PadicNumber) else ctx.integer(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1].is_exact_zero:
            coeffs.pop()
        if len(coeffs) < 2 and not allow_constant:
            raise ValidationError("polynomial must have degree >= 1")
        if len(coeffs) > 1 and not coeffs[-1].is_certified_nonzero:
            raise ValidationError("leading coefficient must be certified nonzero")
        self.ctx = ctx
        self.coefficients = coeffs

    @classmethod
    def from_rationals(cls, ctx, rationals):
        """Coefficients as (numerator, denominator) pairs or ints, ascending degree."""
        coeffs = []
        for r in rationals:
            if isinstance(r, tuple):
                coeffs.append(ctx.from_rational(*r))
            else:
                coeffs.append(ctx.integer(r))
        return cls(ctx, coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z: PadicNumber) -> PadicNumber:
        acc = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(
            self.ctx,
            [self.coefficients[i] * i for i in range(1, len(self.coefficients))],
            allow_constant=True,
        )

    def shift_argument(self, alpha: PadicNumber) -> list[PadicNumber]:
        """Coefficients of P(X + alpha) (Taylor shift via repeated Horner)."""
        b = list(self.coefficients)
        n = len(b)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                b[j] = b[j] + alpha * b[j + 1]
        return b

    def __repr__(self):
        return f"Polynomial(degree={self.degree})"


@dataclass(frozen=True)
class FixedPointInfo:
    """A fixed point with its multiplier and classification."""

    point: PadicNumber
    multiplier: PadicNumber
    classification: str
    attracting_radius_valuation: int | None = None


@dataclass(frozen=True)
class FixedPointScan:
    """Outcome of the Z_p fixed-point search.

    ``unresolved_residues`` lists residues a mod p where P(X) - X vanishes but
    its derivative does too (Hensel's criterion fails); those are surfaced, not
    silently dropped.
    """

    points: list
    unresolved_residues: list


def iterate(P: Polynomial, z: PadicNumber, n: int) -> PadicNumber:
    """n-fold application of P."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    for _ in range(n):
        z = P(z)
    return z


def _classify(multiplier: PadicNumber) -> str:
    if multiplier.is_zero_to_precision:
        return SUPERATTRACTING
    return ATTRACTING if multiplier.valuation >= 1 else INDIFFERENT


def find_fixed_points(P: Polynomial, slack: int = 8) -> FixedPointScan:
    """All Z_p fixed points of P that are simple roots of P(X) - X.

    Scans residues a mod p with P(a) - a = 0 mod p and (P - X)'(a) a unit mod
    p, then Newton-lifts each to working precision.  Returned points satisfy
    v(P(alpha) - alpha) >= N - slack.
    """
    ctx = P.ctx
    p = ctx.prime
    n_prec = ctx.working_precision
    # Q = P - X
    q_coeffs = list(P.coefficients)
    q_coeffs[1] = q_coeffs[1] - ctx.one()
    if all(c.is_zero_to_precision for c in q_coeffs):
        raise ValidationError("P(X) - X vanishes identically; every point is fixed")
    try:
        Q = Polynomial(ctx, q_coeffs)
    except ValidationError:
        # P - X collapsed to a constant: no fixed points at all
        return FixedPointScan([], [])
    Qprime = Q.derivative()
    points = []
    unresolved = []
    for a in range(p):
        za = ctx.integer(a)
        qa = Q(za)
        if qa.is_certified_nonzero and qa.valuation == 0:
            continue
        da = Qprime(za)
        if not da.is_certified_nonzero or da.valuation != 0:
            unresolved.append(a)
            continue
        x = za
        for _ in range(n_prec.bit_length() + 3):
            fx = Q(x)
            if fx.is_zero_to_precision and fx.zero_bound >= n_prec - slack:
                break
            x = x - fx / Qprime(x)
        fx = Q(x)
        if not (fx.is_zero_to_precision and fx.zero_bound >= n_prec - slack):
            unresolved.append(a)
            continue
        mult = P.derivative()(x)
        cls = _classify(mult)
        radius = None
        info = FixedPointInfo(x, mult, cls, radius)
        if cls == ATTRACTING:
            info = FixedPointInfo(x, mult, cls, attracting_radius(P, info))
        points.append(info)
    return FixedPointScan(points, unresolved)


def attracting_radius(P: Polynomial, fp: FixedPointInfo) -> int:
    """Smallest integer m such that one P-step provably scales distances.

    On {v(z - alpha) >= m} the conjugate G = P(X + alpha) - alpha satisfies
    v(b_i) + (i - 1) m > v(b_1) for every higher coefficient, hence
    v(P(z) - alpha) = v(multiplier) + v(z - alpha) and the orbit converges to
    alpha.
    """
    if fp.classification != ATTRACTING:
        raise ValidationError("attracting_radius needs an attracting fixed point")
    g = P.shift_argument(fp.point)
    v1 = fp.multiplier.valuation
    m = 1
    for i in range(2, len(g)):
        bi = g[i]
        lb = bi.valuation_lower_bound
        # need lb + (i-1)*m > v1
        need = (v1 - lb) // (i - 1) + 1
        if need > m:
            m = need
    return m


def orbit_distances(P: Polynomial, alpha: PadicNumber, z: PadicNumber, steps: int):
    """Orbit points with distance valuations v(P^n(z) - alpha).

    Returns (points, distances, exhausted_at): distances[n] is the exact
    valuation, or None for a coordinate indistinguishable from alpha;
    exhausted_at marks the first step where a formerly-resolved distance
    collapsed below precision (the expected failure mode of long iterations).
    """
    points = [z]
    d0 = z - alpha
    was_resolved = d0.is_certified_nonzero
    distances = [d0.valuation if d0.is_certified_nonzero else None]
    exhausted_at = None
    for n in range(1, steps + 1):
        z = P(z)
        points.append(z)
        d = z - alpha
        if d.is_certified_nonzero:
            distances.append(d.valuation)
        else:
            distances.append(None)
            if was_resolved and exhausted_at is None:
                exhausted_at = n
    return points, distances, exhausted_at
