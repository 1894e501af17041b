"""Period lattices from the roots e1, e2, e3 via optimal AGMs.

With a^2 = e1 - e3, b^2 = e1 - e2, c^2 = e2 - e3 and signs chosen so that
(a, b), (c, ib) and (a, c) are all good, the three values

    w1 = pi/M(a, b),   w2 = pi/M(c, ib),   w3 = i*pi/M(a, c)

are the minimal representatives of the three non-zero cosets of 2*Lambda
in Lambda, and any two of them form a basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .agm import PairStatus, agm_optimal, agm_real, is_good
from .curve import CurveRoots, check_distinct
from .errors import ConsistencyError, DegenerateCurve
from .lattice import Lattice, make_oriented
from .numerics import CNum, PrecisionContext, principal_sqrt


@dataclass(frozen=True)
class SignSelection:
    a: CNum
    b: CNum
    c: CNum
    roots: CurveRoots
    swapped: bool
    statuses: tuple  # PairStatus of (a, b), (c, ib), (a, c)

    @property
    def permuted_roots(self) -> CurveRoots:
        return self.roots

    @property
    def tie_index(self) -> int | None:
        """0, 1 or 2 for the first condition that holds with equality."""
        for k, s in enumerate(self.statuses):
            if s is PairStatus.TIE:
                return k
        return None


@dataclass(frozen=True)
class PeriodTriple:
    w1: CNum
    w2: CNum
    w3: CNum
    lattice: Lattice
    rectangular: bool
    ortho_basis: tuple | None = None
    # rectangular case: the two minimal vectors (w, w') of the tied coset
    tie_pair: tuple | None = None
    selection: SignSelection | None = None

    @property
    def periods(self) -> tuple:
        return self.w1, self.w2, self.w3


def _statuses(a, b, c, ctx):
    i = ctx.mp.mpc(0, 1)
    return is_good(a, b, ctx), is_good(c, i * b, ctx), is_good(a, c, ctx)


def choose_signs(roots: CurveRoots, ctx: PrecisionContext) -> SignSelection:
    """Fix signs of a, b, c (and possibly swap e1, e3) so all three pairs are good.

    a is always the principal square root of e1 - e3 for the final ordering.
    When the (a, b) or (a, c) condition is a tie, the failing (c, ib)
    condition is repaired by flipping b or c instead of swapping roots.
    """
    mp = ctx.mp
    i = mp.mpc(0, 1)
    roots = CurveRoots(*(mp.mpc(e) for e in roots))
    check_distinct(roots, ctx)
    e1, e2, e3 = roots
    a = principal_sqrt(e1 - e3, ctx)
    b = principal_sqrt(e1 - e2, ctx)
    c = principal_sqrt(e2 - e3, ctx)
    if is_good(a, b, ctx) is PairStatus.BAD:
        b = -b
    if is_good(a, c, ctx) is PairStatus.BAD:
        c = -c

    swapped = False
    s1, s2, s3 = _statuses(a, b, c, ctx)
    if s2 is PairStatus.BAD:
        if s1 is PairStatus.TIE:
            b = -b
        elif s3 is PairStatus.TIE:
            c = -c
        else:
            roots = CurveRoots(e3, e2, e1)
            a, b, c = i * a, i * c, i * b
            swapped = True
    if a.real < 0 or (a.real == 0 and a.imag < 0):
        a, b, c = -a, -b, -c

    statuses = _statuses(a, b, c, ctx)
    if PairStatus.BAD in statuses:
        raise ConsistencyError(f"sign selection failed: {[s.value for s in statuses]}")
    return SignSelection(a, b, c, roots, swapped, statuses)


def period_basis(roots: CurveRoots, ctx: PrecisionContext) -> PeriodTriple:
    """Minimal coset representatives w1, w2, w3 and an oriented basis."""
    mp = ctx.mp
    i = mp.mpc(0, 1)
    pi = mp.pi
    sel = choose_signs(roots, ctx)
    a, b, c = sel.a, sel.b, sel.c

    w1 = pi / agm_optimal(a, b, ctx).m
    w2 = pi / agm_optimal(c, i * b, ctx).m
    w3 = i * pi / agm_optimal(a, c, ctx).m

    tie_pair = None
    k = sel.tie_index
    if k == 0:
        tie_pair = (w1, pi / agm_optimal(a, -b, ctx).m)
    elif k == 1:
        tie_pair = (w2, pi / agm_optimal(c, -i * b, ctx).m)
    elif k == 2:
        tie_pair = (w3, i * pi / agm_optimal(a, -c, ctx).m)

    ortho = None
    if tie_pair is not None:
        w, wp = tie_pair
        ortho = ((w + wp) / 2, (w - wp) / 2)
    return PeriodTriple(
        w1, w2, w3,
        lattice=make_oriented(w1, w2, ctx),
        rectangular=tie_pair is not None,
        ortho_basis=ortho,
        tie_pair=tie_pair,
        selection=sel,
    )


def _real_parts(roots: CurveRoots, ctx: PrecisionContext):
    mp = ctx.mp
    scale = max(abs(mp.mpc(e)) for e in roots) or 1
    out = []
    for e in roots:
        e = mp.mpc(e)
        if abs(e.imag) > ctx.eps_tie * scale:
            raise DegenerateCurve("expected real roots")
        out.append(e.real)
    return out


def periods_real_positive_disc(roots: CurveRoots, ctx: PrecisionContext) -> PeriodTriple:
    """Three real roots e1 > e2 > e3: real w1 > 0 and imaginary w2 with Im > 0."""
    mp = ctx.mp
    e1, e2, e3 = _real_parts(roots, ctx)
    if not (e1 > e2 > e3):
        raise DegenerateCurve("real roots must be strictly descending")
    check_distinct(CurveRoots(*(mp.mpc(e) for e in (e1, e2, e3))), ctx)
    s13 = mp.sqrt(e1 - e3)
    w1 = mp.mpc(mp.pi / agm_real(mp.sqrt(e1 - e2), s13, ctx))
    w2 = mp.mpc(0, mp.pi / agm_real(mp.sqrt(e2 - e3), s13, ctx))
    return PeriodTriple(
        w1, w2, w1 - w2,
        lattice=Lattice(w1, w2),
        rectangular=True,
        ortho_basis=(w1, w2),
    )


def conjugate_pair_order(roots: CurveRoots, ctx: PrecisionContext) -> CurveRoots:
    """Reorder one real and two conjugate roots as (real, Im > 0, Im < 0)."""
    mp = ctx.mp
    es = [mp.mpc(e) for e in roots]
    scale = max(abs(e) for e in es) or 1
    real = [e for e in es if abs(e.imag) <= ctx.eps_tie * scale]
    cplx = [e for e in es if abs(e.imag) > ctx.eps_tie * scale]
    if len(real) != 1 or len(cplx) != 2:
        raise DegenerateCurve("expected one real root and a conjugate pair")
    p, q = sorted(cplx, key=lambda e: -e.imag)
    if abs(p - mp.conj(q)) > ctx.eps_tie * scale:
        raise DegenerateCurve("complex roots are not conjugate")
    return CurveRoots(mp.mpc(real[0].real), p, mp.conj(p))


def periods_real_negative_disc(roots: CurveRoots, ctx: PrecisionContext) -> PeriodTriple:
    """One real root: w1 real, w2 = (w+ + w-)/2 with Re(w2/w1) = 1/2."""
    mp = ctx.mp
    e1, e2, e3 = conjugate_pair_order(roots, ctx)
    a0 = principal_sqrt(e1 - e3, ctx)
    x, y = a0.real, a0.imag
    r = abs(a0)
    w_plus = mp.pi / agm_real(x, r, ctx)
    w_minus = mp.mpc(0, mp.pi / agm_real(y, r, ctx))
    w1 = mp.mpc(w_plus)
    w2 = (w1 + w_minus) / 2
    return PeriodTriple(
        w1, w2, w2 - w1,
        lattice=make_oriented(w1, w2, ctx),
        rectangular=False,
    )

