"""Curve models: roots of 4X^3 - g2 X - g3, (g2, g3), long Weierstrass.

The long model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 maps to
Y^2 = 4X^3 - g2 X - g3 via X = x + b2/12, Y = 2y + a1 x + a3.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurve, SingularCurve
from .numerics import CNum, PrecisionContext


@dataclass(frozen=True)
class CurveRoots:
    e1: CNum
    e2: CNum
    e3: CNum

    def __iter__(self):
        return iter((self.e1, self.e2, self.e3))

    @property
    def shift(self) -> CNum:
        """Mean of the roots; zero for a curve in short form."""
        return (self.e1 + self.e2 + self.e3) / 3

    def permuted(self, order) -> CurveRoots:
        e = tuple(self)
        return CurveRoots(*(e[k] for k in order))


@dataclass(frozen=True)
class CurveInvariants:
    g2: CNum
    g3: CNum

    @property
    def discriminant(self) -> CNum:
        return self.g2**3 - 27 * self.g3**2


@dataclass(frozen=True)
class WeierstrassCoeffs:
    a1: CNum
    a2: CNum
    a3: CNum
    a4: CNum
    a6: CNum

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6

    def to_short(self, x, y):
        """Map a point (x, y) of the long model to (X, Y) on 4X^3 - g2X - g3."""
        b2 = self.b_invariants()[0]
        return x + b2 / 12, 2 * y + self.a1 * x + self.a3


def _check_discriminant(inv: CurveInvariants, ctx: PrecisionContext) -> None:
    g2, g3 = inv.g2, inv.g3
    scale = max(abs(g2) ** 3, 27 * abs(g3) ** 2)
    if scale == 0 or abs(inv.discriminant) <= ctx.eps_tie * scale:
        raise SingularCurve("discriminant g2^3 - 27 g3^2 vanishes")


def invariants_from_coeffs(w: WeierstrassCoeffs, ctx: PrecisionContext | None = None) -> CurveInvariants:
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    w = WeierstrassCoeffs(*(mp.mpc(c) for c in (w.a1, w.a2, w.a3, w.a4, w.a6)))
    b2, b4, b6 = w.b_invariants()
    g2 = (b2 * b2 - 24 * b4) / 12
    g3 = (36 * b2 * b4 - b2**3 - 216 * b6) / 216
    inv = CurveInvariants(g2, g3)
    _check_discriminant(inv, ctx)
    return inv


def check_distinct(roots: CurveRoots, ctx: PrecisionContext) -> None:
    e1, e2, e3 = roots
    scale = max(abs(e1 - e2), abs(e1 - e3), abs(e2 - e3))
    for d in (e1 - e2, e1 - e3, e2 - e3):
        if scale == 0 or abs(d) <= ctx.eps_tie * scale:
            raise DegenerateCurve("roots are not distinct")


def invariants_from_roots(roots: CurveRoots, ctx: PrecisionContext | None = None) -> CurveInvariants:
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    roots = CurveRoots(*(mp.mpc(e) for e in roots))
    check_distinct(roots, ctx)
    s = roots.shift
    e1, e2, e3 = (e - s for e in roots)
    return CurveInvariants(-4 * (e1 * e2 + e1 * e3 + e2 * e3), 4 * e1 * e2 * e3)


def _order_key(ctx: PrecisionContext):
    tol = ctx.eps_tie

    def close(x, y, scale):
        return abs(x - y) <= tol * scale

    def cmp(p, q):
        scale = max(abs(p), abs(q)) or 1
        for x, y in ((abs(p), abs(q)), (p.real, q.real), (p.imag, q.imag)):
            if not close(x, y, scale):
                return -1 if x > y else 1
        return 0

    return functools.cmp_to_key(cmp)


def sort_roots(values, ctx: PrecisionContext) -> list[CNum]:
    """Descending |e|; ties broken by descending Re, then descending Im."""
    return sorted(values, key=_order_key(ctx))


def _newton_polish(e, g2, g3, scale, ctx: PrecisionContext):
    mp = ctx.mp
    prev = None
    for _ in range(200):
        f = (4 * e * e - g2) * e - g3
        df = 12 * e * e - g2
        if df == 0:
            break
        step = f / df
        e -= step
        size = abs(step)
        if size <= ctx.eps_conv * scale:
            break
        # stagnation: rounding noise has taken over
        if prev is not None and size >= prev and size <= 2**-40 * scale:
            break
        prev = size
    return e


def roots_from_invariants(inv: CurveInvariants, ctx: PrecisionContext) -> CurveRoots:
    """Roots of 4X^3 - g2 X - g3: double-precision seeds, Newton at full precision."""
    mp = ctx.mp
    g2, g3 = mp.mpc(inv.g2), mp.mpc(inv.g3)
    inv = CurveInvariants(g2, g3)
    _check_discriminant(inv, ctx)
    # Rescale X = s*Y so the seed polynomial has O(1) coefficients.
    s = max(mp.sqrt(abs(g2)), mp.cbrt(abs(g3)))
    c1 = complex(g2 / s**2)
    c0 = complex(g3 / s**3)
    seeds = np.roots([4.0, 0.0, -c1, -c0])
    roots = [_newton_polish(mp.mpc(complex(r)) * s, g2, g3, s, ctx) for r in seeds]
    out = CurveRoots(*sort_roots(roots, ctx))
    check_distinct(out, ctx)
    return out
