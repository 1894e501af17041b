from __future__ import annotations

import random

import pytest

from ellagm import (
    INFINITY,
    CurveInvariants,
    CurveRoots,
    Lattice,
    Point,
    PrecisionContext,
    period_basis,
    point_add,
    point_neg,
)
from ellagm.curve import invariants_from_roots
from ellagm.errors import OffCurve, PoleError
from ellagm.oracle import curve_residual, lattice_invariants, point_double, wp, wp_limit

from conftest import EX1, EX1_ROOTS, roots_of

CTX = PrecisionContext(50)
MP = CTX.mp
LAT = Lattice(MP.mpc(1.1, 0.2), MP.mpc(0.3, 0.9))


def rand_z(rng, lat=LAT):
    return rng.uniform(-2, 2) * lat.w1 + rng.uniform(-2, 2) * lat.w2


def test_lattice_invariants_match_curve():
    roots = roots_of(CTX, EX1_ROOTS)
    pt = period_basis(roots, CTX)
    inv = lattice_invariants(pt.lattice, CTX)
    ref = invariants_from_roots(roots, CTX)
    assert abs(inv.g2 - ref.g2) < 1e-45 * abs(ref.g2)
    assert abs(inv.g3 - ref.g3) < 1e-45 * abs(ref.g3)


def test_square_lattice_invariants():
    # the lattice Z[i] has g3 = 0 by its fourfold symmetry
    inv = lattice_invariants(Lattice(MP.mpc(1), MP.mpc(0, 1)), CTX)
    assert abs(inv.g3) < 1e-45
    assert inv.g2.real > 0


def test_wp_parity_and_equation():
    rng = random.Random(41)
    inv = lattice_invariants(LAT, CTX)
    for _ in range(30):
        z = rand_z(rng)
        v = wp(z, LAT, CTX)
        m = wp(-z, LAT, CTX)
        assert abs(m.wp - v.wp) < 1e-40 * abs(v.wp)
        assert abs(m.wp_prime + v.wp_prime) < 1e-40 * abs(v.wp_prime)
        scale = abs(v.wp) ** 3 + 1
        assert abs(v.wp_prime**2 - (4 * v.wp**3 - inv.g2 * v.wp - inv.g3)) < 1e-40 * scale


def test_wp_periodicity_and_pole():
    z = MP.mpc(0.31, 0.17)
    a = wp(z, LAT, CTX)
    b = wp(z + 3 * LAT.w1 - 2 * LAT.w2, LAT, CTX)
    assert abs(a.wp - b.wp) < 1e-40 * abs(a.wp)
    with pytest.raises(PoleError):
        wp(2 * LAT.w1 + LAT.w2, LAT, CTX)


def test_wp_ex1_point(ctx100):
    mp = ctx100.mp
    roots = roots_of(ctx100, EX1_ROOTS)
    pt = period_basis(roots, ctx100)
    # z_P printed to 20 places, so agreement is only to that level
    v = wp(mp.mpc(*EX1["z"]), pt.lattice, ctx100)
    assert abs(v.wp - mp.mpc(2, -1)) < 1e-18
    assert abs(v.wp_prime - mp.mpc(8, 4)) < 1e-17
    v = wp(pt.w1 / 2, pt.lattice, ctx100)
    assert abs(v.wp - roots.e1) < mp.mpf(10) ** -95


def test_duplication_consistency():
    rng = random.Random(42)
    inv = lattice_invariants(LAT, CTX)
    for _ in range(20):
        z = rand_z(rng)
        v = wp(z, LAT, CTX)
        two = wp(2 * z, LAT, CTX)
        dbl = point_double(Point(v.wp, v.wp_prime), inv, CTX)
        assert abs(two.wp - dbl.x) < 1e-35 * (abs(two.wp) + 1)
        assert abs(two.wp_prime - dbl.y) < 1e-35 * (abs(two.wp_prime) + 1)


def test_addition_theorem():
    rng = random.Random(43)
    for _ in range(20):
        z1, z2 = rand_z(rng), rand_z(rng)
        a, b = wp(z1, LAT, CTX), wp(z2, LAT, CTX)
        rhs = -a.wp - b.wp + ((a.wp_prime - b.wp_prime) / (a.wp - b.wp)) ** 2 / 4
        lhs = wp(z1 + z2, LAT, CTX).wp
        assert abs(lhs - rhs) < 1e-35 * (abs(lhs) + 1)


def test_wp_limit_values():
    w1 = MP.mpc(1.3, 0.4)
    m = MP.pi / w1
    v = wp_limit(w1 / 2, w1, CTX)
    assert abs(v.wp - 2 * m**2 / 3) < 1e-45 and abs(v.wp_prime) < 1e-45
    v = wp_limit(w1 / 4, w1, CTX)
    assert abs(v.wp - 5 * m**2 / 3) < 1e-45
    with pytest.raises(PoleError):
        wp_limit(3 * w1, w1, CTX)


def test_wp_limit_cotangent_form():
    rng = random.Random(44)
    w1 = MP.mpc(1.3, 0.4)
    m = MP.pi / w1
    for _ in range(10):
        z = MP.mpc(rng.uniform(0.05, 0.45), rng.uniform(-0.3, 0.3)) * w1
        v = wp_limit(z, w1, CTX)
        t_inf = -(v.wp_prime / 2) / (v.wp + m**2 / 3)
        assert abs(t_inf - m * MP.cot(z * m)) < 1e-40 * abs(t_inf)


def test_wp_approaches_limit():
    # The gap decays like exp(-2 pi N Im(w2/w1)); a short w2 and 250 digits
    # keep all three gaps above rounding level.
    ctx = PrecisionContext(250)
    mp = ctx.mp
    w1, w2 = mp.mpc(1), mp.mpc(0.2, mp.ldexp(1, -14))
    z = mp.mpc(0.3, 0.1)
    lim = wp_limit(z, w1, ctx)
    errs = [abs(wp(z, Lattice(w1, n * w2), ctx).wp - lim.wp) for n in (2**6, 2**10, 2**20)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < mp.mpf(10) ** -170


def test_group_law_basics():
    inv = CurveInvariants(MP.mpc(4), MP.mpc(0))
    t = Point(MP.mpc(0), MP.mpc(0))
    assert point_add(t, t, inv, CTX) is INFINITY
    rng = random.Random(45)
    roots = roots_of(CTX, EX1_ROOTS)
    pt = period_basis(roots, CTX)
    inv = lattice_invariants(pt.lattice, CTX)
    v = wp(rand_z(rng, pt.lattice), pt.lattice, CTX)
    p = Point(v.wp, v.wp_prime)
    assert point_add(p, INFINITY, inv, CTX) == p
    assert point_add(INFINITY, p, inv, CTX) == p
    assert point_add(p, point_neg(p), inv, CTX) is INFINITY
    assert point_neg(INFINITY) is INFINITY
    with pytest.raises(OffCurve):
        point_add(Point(MP.mpc(1), MP.mpc(1)), p, inv, CTX)


def test_associativity():
    rng = random.Random(46)
    for _ in range(50):
        e1, e2 = (MP.mpc(rng.uniform(-10, 10), rng.uniform(-10, 10)) for _ in range(2))
        inv = invariants_from_roots(CurveRoots(e1, e2, -e1 - e2), CTX)
        pts = []
        for _ in range(3):
            x = MP.mpc(rng.uniform(-10, 10), rng.uniform(-10, 10))
            pts.append(Point(x, MP.sqrt(4 * x**3 - inv.g2 * x - inv.g3)))
        p, q, r = pts
        lhs = point_add(point_add(p, q, inv, CTX), r, inv, CTX)
        rhs = point_add(p, point_add(q, r, inv, CTX), inv, CTX)
        assert abs(lhs.x - rhs.x) < 1e-35 * (abs(lhs.x) + 1)
        assert abs(lhs.y - rhs.y) < 1e-35 * (abs(lhs.y) + 1)
        assert curve_residual(lhs, inv) < 1e-40


@pytest.mark.parametrize("g2, g3", [(4, 0), (0, 4)])
def test_half_periods_symmetric_lattices(g2, g3):
    # one invariant vanishes, so half the series coefficients are zero
    from ellagm.curve import roots_from_invariants

    roots = roots_from_invariants(CurveInvariants(MP.mpc(g2), MP.mpc(g3)), CTX)
    pt = period_basis(roots, CTX)
    for w in pt.periods:
        v = wp(w / 2, pt.lattice, CTX)
        assert min(abs(v.wp - e) for e in roots) < 1e-45
