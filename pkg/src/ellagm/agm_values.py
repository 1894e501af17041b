"""Every AGM value of a pair, located in an explicit lattice coset.

For a good pair (a, b) let c = sqrt(a^2 - b^2) with (a, c) good, and
put w = pi/M(a, b), w' = i*pi/M(a, c).  Then for every finite schedule S
of bad steps, pi/M_S(+-a, +-b) = u*w + v*w' with gcd(u, v) = 1 and

    (+a, +b): u = 1, v = 0 (mod 4)      (+a, -b): u = 1, v = 2 (mod 4)
    (-a, -b): u = 3, v = 0 (mod 4)      (-a, +b): u = 3, v = 2 (mod 4)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .agm import PairStatus, agm_optimal, agm_scheduled, check_pair, is_good
from .errors import CosetViolation
from .lattice import Coordinates, Lattice, coordinates
from .numerics import CNum, PrecisionContext, principal_sqrt

EXPECTED_RESIDUES = {
    (1, 1): (1, 0),
    (1, -1): (1, 2),
    (-1, -1): (3, 0),
    (-1, 1): (3, 2),
}


@dataclass(frozen=True)
class CosetReport:
    value: CNum
    coords: Coordinates
    u: int
    v: int
    residues: tuple[int, int]
    primitive: bool
    schedule: frozenset = frozenset()
    signs: tuple[int, int] = (1, 1)

    @property
    def expected_residues(self) -> tuple[int, int]:
        return EXPECTED_RESIDUES[self.signs]

    @property
    def deviation(self):
        return max(abs(self.coords.u - self.u), abs(self.coords.v - self.v))


def coset_basis(a, b, ctx: PrecisionContext) -> Lattice:
    """The basis (w, w') in which the coset pattern is stated; order and signs kept."""
    mp = ctx.mp
    a, b = mp.mpc(a), mp.mpc(b)
    check_pair(a, b, ctx)
    c = principal_sqrt(a * a - b * b, ctx)
    if is_good(a, c, ctx) is PairStatus.BAD:
        c = -c
    w = mp.pi / agm_optimal(a, b, ctx).m
    w_dash = mp.mpc(0, 1) * mp.pi / agm_optimal(a, c, ctx).m
    return Lattice(w, w_dash)


def classify_agm_value(a, b, schedule, sign_a: int, sign_b: int, ctx: PrecisionContext,
                       basis: Lattice | None = None, tol=None) -> CosetReport:
    """Coordinates of pi/M_S(sign_a*a, sign_b*b); raises CosetViolation on a mismatch."""
    mp = ctx.mp
    if (sign_a, sign_b) not in EXPECTED_RESIDUES:
        raise ValueError("signs must be +1 or -1")
    tol = ctx.member_tol if tol is None else tol
    basis = basis or coset_basis(a, b, ctx)
    value = mp.pi / agm_scheduled(sign_a * mp.mpc(a), sign_b * mp.mpc(b), schedule, ctx).m
    coords = coordinates(value, basis, ctx)
    u, v = coords.rounded()
    report = CosetReport(
        value=value,
        coords=coords,
        u=u,
        v=v,
        residues=(u % 4, v % 4),
        primitive=math.gcd(u, v) == 1,
        schedule=frozenset(schedule),
        signs=(sign_a, sign_b),
    )
    label = f"S={sorted(report.schedule)} signs={report.signs}"
    if report.deviation > tol:
        raise CosetViolation(f"{label}: not a lattice point (deviation {mp.nstr(report.deviation, 5)})")
    if report.residues != report.expected_residues:
        raise CosetViolation(f"{label}: residues {report.residues}, expected {report.expected_residues}")
    if not report.primitive:
        raise CosetViolation(f"{label}: ({u}, {v}) is not primitive")
    return report


def schedules(max_index: int):
    """All subsets of {1, ..., max_index}, smallest first."""
    idx = range(1, max_index + 1)
    for k in range(max_index + 1):
        for combo in itertools.combinations(idx, k):
            yield frozenset(combo)


def agm_value_reports(a, b, max_index: int, ctx: PrecisionContext, tol=None) -> list[CosetReport]:
    """Classify every schedule S of {1..max_index} under all four sign patterns."""
    basis = coset_basis(a, b, ctx)
    return [
        classify_agm_value(a, b, s, sa, sb, ctx, basis=basis, tol=tol)
        for s in schedules(max_index)
        for sa, sb in EXPECTED_RESIDUES
    ]


def duplicate_coordinates(reports) -> list[tuple[int, int]]:
    """(u, v) pairs that occur for more than one (schedule, signs); for inspection."""
    seen: dict[tuple[int, int], int] = {}
    for r in reports:
        seen[(r.u, r.v)] = seen.get((r.u, r.v), 0) + 1
    return sorted(k for k, n in seen.items() if n > 1)
