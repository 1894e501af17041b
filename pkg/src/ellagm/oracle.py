"""Independent checks: Weierstrass P, its rank-1 limit, and the group law.

``wp`` never calls the AGM.  The invariants g2, g3 of a lattice come from
the Eisenstein q-series of its reduced basis, P itself from the Laurent
series at 0 combined with repeated duplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .curve import CurveInvariants
from .errors import OffCurve, PoleError
from .lattice import Lattice, ReduceMode, reduce_basis, reduce_mod
from .numerics import CNum, PrecisionContext


@dataclass(frozen=True)
class WpValue:
    wp: CNum
    wp_prime: CNum


@dataclass(frozen=True)
class Point:
    """Affine point (x, y), or the point at infinity when x is None."""

    x: CNum | None = None
    y: CNum | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def kind(self) -> str:
        return "infinity" if self.is_infinity else "affine"


INFINITY = Point()


def lattice_invariants(lat: Lattice, ctx: PrecisionContext) -> CurveInvariants:
    """g2 = 60 G4 and g3 = 140 G6 of the lattice, via Lambert series."""
    mp = ctx.mp
    red = reduce_basis(lat, ctx)
    q = mp.exp(2 * mp.pi * mp.mpc(0, 1) * red.tau)
    s3 = mp.mpc(0)
    s5 = mp.mpc(0)
    qn = mp.mpc(1)
    eps = mp.ldexp(1, -ctx.work_bits - 8)
    n = 0
    while True:
        n += 1
        qn *= q
        lam = qn / (1 - qn)
        t3 = n**3 * lam
        t5 = n**5 * lam
        s3 += t3
        s5 += t5
        if abs(t5) <= eps and abs(t3) <= eps:
            break
    k = 2 * mp.pi / red.w1
    g2 = k**4 * (1 + 240 * s3) / 12
    g3 = k**6 * (1 - 504 * s5) / 216
    return CurveInvariants(g2, g3)


class WeierstrassP:
    """P and P' of one lattice at one precision; coefficients are cached."""

    def __init__(self, lat: Lattice, ctx: PrecisionContext, invariants: CurveInvariants | None = None):
        self.ctx = ctx
        self.lattice = reduce_basis(lat, ctx)
        self.lam_min = abs(self.lattice.w1)
        inv = invariants or lattice_invariants(self.lattice, ctx)
        self.g2, self.g3 = inv.g2, inv.g3
        self._coeffs = [None, None, self.g2 / 20, self.g3 / 28]

    def _coeff(self, k: int):
        c = self._coeffs
        while len(c) <= k:
            j = len(c)
            acc = sum(c[m] * c[j - m] for m in range(2, j - 1))
            c.append(3 * acc / ((2 * j + 1) * (j - 3)))
        return c[k]

    def _series(self, w):
        mp = self.ctx.mp
        w2 = w * w
        wp = 1 / w2
        dwp = -2 / (w2 * w)
        power = mp.mpc(1)  # w^(2k-4)
        eps = mp.ldexp(1, -self.ctx.work_bits)
        extra = 0
        k = 2
        while True:
            ck = self._coeff(k)
            term_d = (2 * k - 2) * ck * power * w
            term = ck * power * w2
            wp += term
            dwp += term_d
            # zero coefficients (g2 = 0 or g3 = 0) say nothing about convergence
            if ck != 0:
                if abs(term) <= eps * abs(wp) and abs(term_d) <= eps * abs(dwp):
                    extra += 1
                    if extra > 4:
                        break
                else:
                    extra = 0
            power *= w2
            k += 1
        return wp, dwp

    def _double(self, x, y):
        lam = (12 * x * x - self.g2) / (2 * y)
        x2 = lam * lam / 4 - 2 * x
        return x2, -(y + lam * (x2 - x))

    def __call__(self, z) -> WpValue:
        mp = self.ctx.mp
        z = reduce_mod(mp.mpc(z), self.lattice, ReduceMode.CENTERED, self.ctx)
        if abs(z) <= self.ctx.member_tol * self.lam_min:
            raise PoleError("P has a pole on the lattice")
        k = 0
        w = z
        limit = self.lam_min / 8
        while abs(w) > limit:
            w /= 2
            k += 1
        x, y = self._series(w)
        for _ in range(k):
            x, y = self._double(x, y)
        return WpValue(x, y)


@lru_cache(maxsize=32)
def _evaluator(w1, w2, ctx: PrecisionContext, invariants) -> WeierstrassP:
    return WeierstrassP(Lattice(w1, w2), ctx, invariants)


def wp(z, lat: Lattice, ctx: PrecisionContext, invariants: CurveInvariants | None = None) -> WpValue:
    """(P(z), P'(z)) for the lattice; invariants default to the q-series values."""
    return _evaluator(lat.w1, lat.w2, ctx, invariants)(z)


def wp_limit(z, w1, ctx: PrecisionContext) -> WpValue:
    """Limit of P and P' as the second period tends to infinity."""
    mp = ctx.mp
    m = mp.pi / mp.mpc(w1)
    arg = mp.mpc(z) * m
    s = mp.sin(arg)
    if abs(s) <= ctx.eps_tie:
        raise PoleError("z is a multiple of w1")
    c = mp.cos(arg)
    return WpValue(m**2 * (1 / s**2 - mp.mpf(1) / 3), -2 * m**3 * c / s**3)


# -- group law on Y^2 = 4X^3 - g2 X - g3 -------------------------------------

def curve_residual(p: Point, inv: CurveInvariants):
    """Relative residual of the curve equation at an affine point."""
    x, y = p.x, p.y
    rhs = 4 * x**3 - inv.g2 * x - inv.g3
    scale = abs(y * y) + 4 * abs(x) ** 3 + abs(inv.g2 * x) + abs(inv.g3)
    if scale == 0:
        return abs(y * y - rhs)
    return abs(y * y - rhs) / scale


def on_curve(p: Point, inv: CurveInvariants, tol) -> bool:
    return p.is_infinity or curve_residual(p, inv) <= tol


def point_neg(p: Point) -> Point:
    return p if p.is_infinity else Point(p.x, -p.y)


def point_add(p: Point, q: Point, inv: CurveInvariants, ctx: PrecisionContext, tol=None) -> Point:
    tol = ctx.member_tol if tol is None else tol
    for pt in (p, q):
        if not on_curve(pt, inv, tol):
            raise OffCurve("point is not on the curve")
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    mp = ctx.mp
    xp, yp, xq, yq = (mp.mpc(v) for v in (p.x, p.y, q.x, q.y))
    scale = max(abs(xp), abs(xq), 1)
    yscale = max(abs(yp), abs(yq), 1)
    if abs(xp - xq) <= ctx.eps_tie * scale:
        if abs(yp + yq) <= tol * yscale:
            return INFINITY
        lam = (12 * xp * xp - inv.g2) / (2 * yp)
    else:
        lam = (yq - yp) / (xq - xp)
    xr = lam * lam / 4 - xp - xq
    return Point(xr, -(yp + lam * (xr - xp)))


def point_double(p: Point, inv: CurveInvariants, ctx: PrecisionContext, tol=None) -> Point:
    return point_add(p, p, inv, ctx, tol)
