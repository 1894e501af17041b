from __future__ import annotations

import math
import random

import pytest

from ellagm import PrecisionContext
from ellagm.agm_values import (
    EXPECTED_RESIDUES,
    agm_value_reports,
    classify_agm_value,
    coset_basis,
    duplicate_coordinates,
    schedules,
)
from ellagm.errors import CosetViolation
from ellagm.periods import choose_signs

from conftest import EX1_ROOTS, roots_of


def test_empty_schedule(ctx50):
    r = classify_agm_value(3, 1, (), 1, 1, ctx50)
    assert (r.u, r.v) == (1, 0)
    r = classify_agm_value(3, 1, (), -1, -1, ctx50)
    assert (r.u, r.v) == (-1, 0) and r.residues == (3, 0)


def test_three_one_first_step_bad(ctx50):
    # plain double-precision AGM with the first step flipped gives
    # pi/M = 1.6857503548 + 4.3130312950i = 1*w + 4*w'
    r = classify_agm_value(3, 1, {1}, 1, 1, ctx50)
    assert (r.u, r.v) == (1, 4)
    assert r.residues == (1, 0) and r.primitive
    assert abs(r.value - ctx50.mp.mpc("1.685750354812596", "4.313031294999286")) < 1e-12


def test_basis_sign_of_c(ctx50):
    basis = coset_basis(3, 1, ctx50)
    assert abs(basis.w1.imag) < 1e-45 and basis.w1.real > 0
    assert abs(basis.w2.real) < 1e-45 and basis.w2.imag > 0


def test_ex1_pair(ctx100):
    sel = choose_signs(roots_of(ctx100, EX1_ROOTS), ctx100)
    basis = coset_basis(sel.a, sel.b, ctx100)
    seen = set()
    for s in ({1}, {2}, {1, 2}):
        r = classify_agm_value(sel.a, sel.b, s, 1, 1, ctx100, basis=basis)
        assert r.residues == (1, 0) and math.gcd(r.u, r.v) == 1
        assert r.deviation < 1e-80
        seen.add((r.u, r.v))
    assert (1, 0) not in seen


def test_schedules_enumeration():
    all_s = list(schedules(3))
    assert len(all_s) == 8 and len(set(all_s)) == 8
    assert all_s[0] == frozenset()


def test_random_pairs_small_depth():
    ctx = PrecisionContext(60)
    mp = ctx.mp
    rng = random.Random(71)
    for _ in range(5):
        a = mp.mpc(rng.uniform(-10, 10), rng.uniform(-10, 10))
        b = mp.mpc(rng.uniform(-10, 10), rng.uniform(-10, 10))
        reports = agm_value_reports(a, b, 3, ctx, tol=mp.mpf(10) ** -40)
        assert len(reports) == 8 * 4
        for r in reports:
            assert r.residues == EXPECTED_RESIDUES[r.signs] and r.primitive
        # injectivity is not claimed; only report it
        dups = duplicate_coordinates(reports)
        if dups:
            print("repeated coordinates:", dups)


def test_violation_raised(ctx30):
    with pytest.raises(ValueError):
        classify_agm_value(3, 1, (), 2, 1, ctx30)
    # an impossible tolerance turns rounding noise into a reported violation
    with pytest.raises(CosetViolation):
        classify_agm_value(3, 1, {1, 2, 3}, 1, 1, ctx30, tol=0)
