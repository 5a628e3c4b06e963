"""Exact multivariate polynomials over Q_p (variety generators)."""

from __future__ import annotations

from .padic import PadicContext, PadicNumber
from .series import TruncatedSeries


class MultivariatePoly:
    """Polynomial in g variables, stored as {exponent vector: coefficient}.

    Exactly-zero coefficients are dropped at construction; a coefficient that
    is merely zero to precision is rejected (generators must be given exactly,
    e.g. from rational input).
    """

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx: PadicContext, nvars: int, terms):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.ctx = ctx
        self.nvars = nvars
        clean = {}
        for expo, coeff in dict(terms).items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != nvars or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent vector {expo}")
            if not isinstance(coeff, PadicNumber):
                coeff = ctx.integer(coeff)
            if coeff.is_exact_zero:
                continue
            if coeff.is_zero_to_precision:
                raise ValueError("generator coefficients must be exact or certified nonzero")
            if expo in clean:
                raise ValueError(f"duplicate exponent vector {expo}")
            clean[expo] = coeff
        self.terms = clean

    def __repr__(self):
        return f"MultivariatePoly(nvars={self.nvars}, {len(self.terms)} terms)"

    def evaluate(self, point) -> PadicNumber:
        """Value at a tuple of g scalars."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong arity")
        acc = self.ctx.zero()
        for expo, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, expo):
                if e:
                    term = term * x**e
            acc = acc + term
        return acc

    def evaluate_series(self, series_list, order: int) -> TruncatedSeries:
        """Substitute a truncated series for each variable.

        Per-variable power tables keep this at O(total degree) series products.
        """
        if len(series_list) != self.nvars:
            raise ValueError("series tuple has wrong arity")
        one = TruncatedSeries.constant(self.ctx, self.ctx.one(), order)
        powers = []
        for i, s in enumerate(series_list):
            max_e = max((expo[i] for expo in self.terms), default=0)
            table = [one]
            for _ in range(max_e):
                table.append(table[-1] * s.truncate(order))
            powers.append(table)
        acc = TruncatedSeries.zero(self.ctx, order)
        for expo, coeff in self.terms.items():
            term = TruncatedSeries.constant(self.ctx, coeff, order)
            for i, e in enumerate(expo):
                if e:
                    term = term * powers[i][e]
            acc = acc + term
        return acc
