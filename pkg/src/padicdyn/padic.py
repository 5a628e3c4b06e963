"""Exact arithmetic in Q_p with capped relative precision.

A :class:`PadicNumber` is either a certified-nonzero value ``p**v * unit`` with
an exact valuation and ``k <= N`` known unit digits, or a "zero" carrying an
absolute-precision bound ("the value is O(p**m)").  All arithmetic tracks
precision pessimistically and raises :class:`~padicdyn.errors.PrecisionError`
rather than guess whenever a comparison or valuation is undecidable.

The module also provides the two norm identities the rest of the library leans
on as executable checks: the unit-circle identity ``|b^n - 1| = |b - 1| |n|``
(for ``b`` close to 1) and its attracting-multiplier specialization
``v(b^n - b) = v(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _core
from .errors import PrecisionError

INF_BOUND = _core.INF_BOUND

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (witness set valid for n < 3.3e24)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicContext:
    """Ambient field Q_p with a relative-precision cap.

    prime: the prime p (checked deterministically).
    working_precision: number N of significant base-p digits carried.
    """

    prime: int
    working_precision: int

    def __post_init__(self):
        if self.prime < 2 or not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.working_precision < 1:
            raise ValueError("working_precision must be >= 1")

    def _make(self, v, u, k) -> "PadicNumber":
        return PadicNumber(self, v, u, k)

    def zero(self, bound: int | None = None) -> "PadicNumber":
        """Exact zero, or a value known only to be O(p**bound)."""
        return self._make(INF_BOUND if bound is None else min(bound, INF_BOUND), 0, 0)

    def one(self) -> "PadicNumber":
        return self._make(0, 1, self.working_precision)

    def integer(self, n: int) -> "PadicNumber":
        return self.from_rational(n, 1)

    def from_rational(self, numerator: int, denominator: int = 1) -> "PadicNumber":
        """Image of numerator/denominator in Q_p at full working precision."""
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        if numerator == 0:
            return self.zero()
        p, n = self.prime, self.working_precision
        vn = _vp(numerator, p)
        vd = _vp(denominator, p)
        un = numerator // p**vn
        ud = denominator // p**vd
        pk = p**n
        u = un * pow(ud, -1, pk) % pk
        return self._make(vn - vd, u, n)


class PadicNumber:
    """Element of Q_p at capped relative precision.  Immutable."""

    __slots__ = ("ctx", "_v", "_u", "_k")

    def __init__(self, ctx: PadicContext, v: int, u: int, k: int):
        self.ctx = ctx
        self._v = v
        self._u = u
        self._k = k

    # -- state predicates ---------------------------------------------------

    @property
    def is_certified_nonzero(self) -> bool:
        return self._u != 0

    @property
    def is_zero_to_precision(self) -> bool:
        """True when no nonzero digit is visible at the carried precision."""
        return self._u == 0

    @property
    def is_exact_zero(self) -> bool:
        return self._u == 0 and self._v >= INF_BOUND

    @property
    def valuation(self) -> int:
        """Exact p-adic valuation; undecidable for (possibly inexact) zeros."""
        if self._u == 0:
            raise PrecisionError(
                f"valuation undecidable: value is zero to O(p^{self._bound_str()})"
            )
        return self._v

    @property
    def valuation_lower_bound(self) -> int:
        """Certified lower bound on the valuation (INF_BOUND for exact zero)."""
        return self._v

    @property
    def relative_precision(self) -> int:
        return self._k

    @property
    def absolute_precision(self) -> int:
        """Exponent m such that the value is known modulo O(p**m)."""
        return self._v + self._k if self._u != 0 else self._v

    @property
    def zero_bound(self) -> int:
        """Absolute-precision bound of a zero value."""
        if self._u != 0:
            raise ValueError("not a zero value")
        return self._v

    def _bound_str(self):
        return "inf" if self._v >= INF_BOUND else str(self._v)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.ctx != self.ctx:
                raise ValueError("operands from different p-adic contexts")
            return other
        if isinstance(other, int):
            return self.ctx.integer(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.ctx.prime
        v, u, k = _core.tr_add(p, self._v, self._u, self._k, o._v, o._u, o._k)
        return PadicNumber(self.ctx, v, u, k)

    __radd__ = __add__

    def __neg__(self):
        v, u, k = _core.tr_neg(self.ctx.prime, self._v, self._u, self._k)
        return PadicNumber(self.ctx, v, u, k)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.ctx.prime
        v, u, k = _core.tr_mul(p, self._v, self._u, self._k, o._v, o._u, o._k)
        return PadicNumber(self.ctx, v, u, k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.ctx.prime
        v, u, k = _core.tr_div(p, self._v, self._u, self._k, o._v, o._u, o._k)
        return PadicNumber(self.ctx, v, u, k)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        """Binary exponentiation; n >= 0."""
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        """Certified comparison; raises when precision cannot decide."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self - o
        if d.is_certified_nonzero:
            return False
        if d.is_exact_zero:
            return True
        raise PrecisionError(
            f"equality undecidable: difference is zero to O(p^{d._bound_str()})"
        )

    __hash__ = None  # mutable-precision equality; not hashable

    # -- presentation ---------------------------------------------------------

    def digits(self, count: int = 8) -> list[int]:
        """First base-p digits of the unit part (low to high)."""
        if self._u == 0:
            return []
        n = min(count, self._k)
        u = self._u
        p = self.ctx.prime
        out = []
        for _ in range(n):
            u, d = divmod(u, p)
            out.append(d)
        return out

    def __repr__(self):
        p = self.ctx.prime
        if self._u == 0:
            if self._v >= INF_BOUND:
                return f"padic(p={p}, 0 exact)"
            return f"padic(p={p}, O({p}^{self._v}))"
        ds = "".join(str(d) for d in self.digits(8))
        return f"padic(p={p}, v={self._v}, unit={ds}..., prec={self._k})"


@dataclass(frozen=True)
class Ball:
    """Closed-valuation ball {z : v(z - center) >= radius_valuation}.

    An open ball of radius p**(-s) corresponds to the integer cutoff
    floor(s) + 1, so every Ball is contained in the open ball it stands for.
    """

    center: PadicNumber
    radius_valuation: int

    def contains(self, z: PadicNumber) -> bool:
        """Exact membership; raises if precision cannot decide."""
        d = z - self.center
        if d.is_certified_nonzero:
            return d.valuation >= self.radius_valuation
        if d.zero_bound >= self.radius_valuation:
            return True
        raise PrecisionError(
            f"membership undecidable: v(z - center) only known to be"
            f" >= {d.zero_bound} < {self.radius_valuation}"
        )


def schinzel_valuation(b: PadicNumber, n: int) -> int:
    """v(b**n - b) in closed form for an attracting-scale b (v(b) >= 1).

    Since v(b) >= 1 makes b**(n-1) - 1 a unit, v(b**n - b) = v(b) exactly.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    if not b.is_certified_nonzero or b.valuation < 1:
        raise ValueError("schinzel_valuation requires v(b) >= 1")
    return b.valuation


def norm_identity_check(beta: PadicNumber, n: int) -> bool:
    """Test v(beta**n - 1) == v(beta - 1) + v_p(n) by direct computation.

    Requires v(beta - 1) >= 2 (the Q_p form of |beta - 1| < |p|).  For beta
    indistinguishable from 1 both sides are zero to precision and the identity
    holds degenerately.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    one = beta.ctx.one()
    d = beta - one
    if d.is_zero_to_precision:
        return (beta**n - one).is_zero_to_precision
    if d.valuation < 2:
        raise ValueError("norm_identity_check requires v(beta - 1) >= 2")
    lhs = beta**n - one
    expected = d.valuation + _vp(n, beta.ctx.prime)
    if not lhs.is_certified_nonzero:
        raise PrecisionError("beta**n - 1 not resolved at working precision")
    return lhs.valuation == expected
