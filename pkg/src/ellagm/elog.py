"""Elliptic logarithms of points on Y^2 = 4(X - e1)(X - e2)(X - e3).

The generic routine runs the optimal AGM on (a, b) alongside the lifted
points (r_n, t_n) with Re(r_n) > 0 and returns arctan(M/t)/M, which lies
in the strip -1/2 < Re(z/w1) <= 1/2 for w1 = pi/M.
"""

from __future__ import annotations

from dataclasses import dataclass

from .agm import agm_optimal, agm_step, is_good, iteration_cap, PairStatus
from .curve import CurveRoots
from .errors import (
    ComponentError,
    ConsistencyError,
    InfinityInput,
    NonConvergence,
    OffCurve,
    TwoTorsionInput,
)
from .lattice import Coordinates, Lattice, coordinates
from .numerics import CNum, PrecisionContext, principal_arctan, principal_sqrt
from .oracle import Point
from .periods import (
    PeriodTriple,
    choose_signs,
    conjugate_pair_order,
    period_basis,
    periods_real_negative_disc,
    periods_real_positive_disc,
)


@dataclass(frozen=True)
class ElogState:
    r: CNum
    t: CNum
    step: int


@dataclass(frozen=True)
class ElogResult:
    z: CNum
    m: CNum
    coords: Coordinates
    lattice: Lattice
    periods: PeriodTriple | None = None
    iterations: int = 0
    tie_broken: bool = False


def curve_residual(roots: CurveRoots, x, y):
    e1, e2, e3 = roots
    f = 4 * (x - e1) * (x - e2) * (x - e3)
    scale = abs(y * y) + 4 * abs(x - e1) * abs(x - e2) * abs(x - e3)
    return abs(y * y - f) / scale if scale else abs(y * y - f)


def _affine(roots: CurveRoots, p: Point, ctx: PrecisionContext):
    if p.is_infinity:
        raise InfinityInput("the point at infinity has elliptic logarithm 0")
    mp = ctx.mp
    x, y = mp.mpc(p.x), mp.mpc(p.y)
    if curve_residual(roots, x, y) > ctx.curve_tol:
        raise OffCurve("point does not satisfy the curve equation")
    e1, e2, e3 = roots
    yscale = mp.sqrt(abs(x - e1) * abs(x - e2) * abs(x - e3)) + abs(y)
    if y == 0 or abs(y) <= ctx.eps_tie * yscale:
        raise TwoTorsionInput("y = 0: use elog_2torsion")
    return x, y


def iterate(a, b, r, t, ctx: PrecisionContext, real: bool = False):
    """Yield (a_n, b_n, state) for n = 1, 2, ... of the joint AGM / (r, t) recursion.

    (a, b) is (a_{n-1}, b_{n-1}) and (r, t) the lifted point at the same level.
    """
    mp = ctx.mp
    n = 0
    while True:
        n += 1
        if real:
            a1, b1, tie = (a + b) / 2, mp.sqrt(a * b), False
            r = mp.sqrt(a1 * (r + 1) / (b * r + a))
        else:
            a1, b1, tie = agm_step(a, b, ctx)
            r = principal_sqrt(a1 * (r + 1) / (b * r + a), ctx)
            if r.real <= 0:
                raise ConsistencyError(f"Re(r) <= 0 at step {n + 1}")
        t = r * t
        a, b = a1, b1
        yield a, b, tie, ElogState(r, t, n + 1)


def _run(a, b, r, t, ctx: PrecisionContext, real: bool = False):
    """Iterate to convergence plus one extra step; return (M, t, steps, ties)."""
    cap = iteration_cap(ctx)
    eps = ctx.eps_conv
    ties = False
    done = False
    for a, b, tie, state in iterate(a, b, r, t, ctx, real):
        ties |= tie
        if done:
            return a, state.t, state.step - 1, ties
        if abs(a / b - 1) <= eps and abs(state.r - 1) <= eps:
            done = True
        if state.step > cap:
            raise NonConvergence(f"elliptic log iteration exceeded {cap} steps")


def elog(roots: CurveRoots, p: Point, ctx: PrecisionContext, periods: PeriodTriple | None = None) -> ElogResult:
    """Elliptic logarithm of a non-2-torsion affine point."""
    mp = ctx.mp
    roots = CurveRoots(*(mp.mpc(e) for e in roots))
    x0, y0 = _affine(roots, p, ctx)
    sel = choose_signs(roots, ctx)
    e1, e2, e3 = sel.roots
    a, b = sel.a, sel.b
    r = principal_sqrt((x0 - e3) / (x0 - e2), ctx)
    t = -y0 / (2 * r * (x0 - e2))
    m, t, steps, ties = _run(a, b, r, t, ctx)
    z = principal_arctan(m / t, ctx) / m
    periods = periods or period_basis(roots, ctx)
    return ElogResult(
        z=z,
        m=m,
        coords=coordinates(z, periods.lattice, ctx),
        lattice=periods.lattice,
        periods=periods,
        iterations=steps,
        tie_broken=ties or sel.tie_index == 0,
    )


def elog_2torsion(roots: CurveRoots, which: int, ctx: PrecisionContext,
                  periods: PeriodTriple | None = None) -> ElogResult:
    """z = pi/(2M) for the 2-torsion point (e_which, 0)."""
    mp = ctx.mp
    es = [mp.mpc(e) for e in roots]
    e1 = es[which]
    e2, e3 = (e for k, e in enumerate(es) if k != which)
    a = principal_sqrt(e1 - e3, ctx)
    b = principal_sqrt(e1 - e2, ctx)
    if is_good(a, b, ctx) is PairStatus.BAD:
        b = -b
    res = agm_optimal(a, b, ctx)
    z = mp.pi / (2 * res.m)
    periods = periods or period_basis(CurveRoots(*es), ctx)
    return ElogResult(
        z=z,
        m=res.m,
        coords=coordinates(z, periods.lattice, ctx),
        lattice=periods.lattice,
        periods=periods,
        iterations=res.iterations,
        tie_broken=res.tie_broken,
    )


def elliptic_log(roots: CurveRoots, p: Point, ctx: PrecisionContext) -> ElogResult:
    """Dispatch on the point: infinity -> 0, 2-torsion -> half period, else :func:`elog`."""
    mp = ctx.mp
    roots = CurveRoots(*(mp.mpc(e) for e in roots))
    periods = period_basis(roots, ctx)
    if p.is_infinity:
        z = mp.mpc(0)
        return ElogResult(z, mp.pi / periods.w1, coordinates(z, periods.lattice, ctx),
                          periods.lattice, periods)
    try:
        return elog(roots, p, ctx, periods)
    except TwoTorsionInput:
        dists = [abs(mp.mpc(p.x) - e) for e in roots]
        return elog_2torsion(roots, dists.index(min(dists)), ctx, periods)


# -- real curves --------------------------------------------------------------

def _real_point(p: Point, ctx: PrecisionContext):
    mp = ctx.mp
    if p.is_infinity:
        raise InfinityInput("the point at infinity has elliptic logarithm 0")
    x, y = mp.mpc(p.x), mp.mpc(p.y)
    scale = max(abs(x), abs(y), 1)
    if abs(x.imag) > ctx.eps_tie * scale or abs(y.imag) > ctx.eps_tie * scale:
        raise ComponentError("expected a real point")
    return x.real, y.real


def elog_real_posdisc(roots: CurveRoots, p: Point, ctx: PrecisionContext) -> ElogResult:
    """Real point on a curve with three real roots, in real arithmetic."""
    mp = ctx.mp
    periods = periods_real_positive_disc(roots, ctx)
    e1, e2, e3 = (mp.mpc(e).real for e in roots)
    _affine(CurveRoots(*(mp.mpc(e) for e in (e1, e2, e3))), p, ctx)
    x0, y0 = _real_point(p, ctx)
    a0 = mp.sqrt(e1 - e3)
    b0 = mp.sqrt(e1 - e2)
    if x0 > e1:
        r = mp.sqrt((x0 - e3) / (x0 - e2))
        t = -y0 / (2 * r * (x0 - e2))
        shift = 0
    elif e3 < x0 < e2:
        # P + (e3, 0) lies on the identity component; add back w2/2.
        r = a0 / mp.sqrt(e1 - x0)
        t = r * y0 / (2 * (x0 - e3))
        shift = periods.w2 / 2
    else:
        raise ComponentError("x lies between e2 and e1 or below e3: no real point")
    m, t, steps, _ = _run(a0, b0, r, t, ctx, real=True)
    z = mp.mpc(mp.atan(m / t) / m) + shift
    return ElogResult(z, mp.mpc(m), coordinates(z, periods.lattice, ctx), periods.lattice,
                      periods, steps)


def elog_real_negdisc(roots: CurveRoots, p: Point, ctx: PrecisionContext) -> ElogResult:
    """Real point on a curve with one real root; one complex step, then real."""
    mp = ctx.mp
    periods = periods_real_negative_disc(roots, ctx)
    ordered = conjugate_pair_order(roots, ctx)
    _affine(ordered, p, ctx)
    x0, y0 = _real_point(p, ctx)
    e1, _, e3 = ordered
    a0 = principal_sqrt(e1 - e3, ctx)
    x, y = a0.real, a0.imag
    s = principal_sqrt(x0 - e3, ctx)
    u, v = s.real, s.imag
    t1 = -y0 / (2 * (u * u + v * v))
    r2 = mp.sqrt(u * x / (u * x + v * y))
    t2 = r2 * t1
    # (a1, b1) = (x, |a0|) after the first step
    m, t, steps, _ = _run(x, abs(a0), r2, t2, ctx, real=True)
    z = mp.mpc(mp.atan(m / t) / m)
    return ElogResult(z, mp.mpc(m), coordinates(z, periods.lattice, ctx), periods.lattice,
                      periods, steps + 1)
