"""Rank-2 lattices in C: orientation, Gauss reduction, coordinates."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath

from .errors import DegenerateLattice
from .numerics import CNum, PrecisionContext


class ReduceMode(enum.Enum):
    CENTERED = "centered"        # coordinates in (-1/2, 1/2]
    FUNDAMENTAL = "fundamental"  # coordinates in [0, 1)


@dataclass(frozen=True)
class Lattice:
    """Basis (w1, w2) with w2/w1 not real.

    Bases built by :func:`make_oriented` and :func:`reduce_basis` also
    satisfy Im(w2/w1) > 0; a raw ``Lattice(w1, w2)`` keeps the order and
    signs it was given, so coordinates can be quoted against any basis.
    """

    w1: CNum
    w2: CNum

    @property
    def tau(self) -> CNum:
        return self.w2 / self.w1

    @property
    def oriented(self) -> bool:
        return self.tau.imag > 0


@dataclass(frozen=True)
class Coordinates:
    u: object
    v: object

    def rounded(self) -> tuple[int, int]:
        return int(mpmath.nint(self.u)), int(mpmath.nint(self.v))


def _check_basis(wa, wb, ctx: PrecisionContext) -> None:
    if wa == 0 or wb == 0:
        raise DegenerateLattice("zero basis vector")
    tau = wb / wa
    if abs(tau.imag) <= ctx.eps_tie * abs(tau):
        raise DegenerateLattice("basis vectors are linearly dependent over R")


def make_oriented(wa, wb, ctx: PrecisionContext) -> Lattice:
    wa, wb = ctx.mp.mpc(wa), ctx.mp.mpc(wb)
    _check_basis(wa, wb, ctx)
    if (wb / wa).imag > 0:
        return Lattice(wa, wb)
    return Lattice(wa, -wb)


def reduce_basis(lat: Lattice, ctx: PrecisionContext) -> Lattice:
    """Gauss-reduce so that |Re tau| <= 1/2 and |tau| >= 1."""
    mp = ctx.mp
    lat = make_oriented(lat.w1, lat.w2, ctx)
    w1, w2 = lat.w1, lat.w2
    slack = 1 + ctx.eps_tie
    for _ in range(10_000):
        tau = w2 / w1
        k = mp.nint(tau.real)
        if k:
            w2 -= int(k) * w1
            tau = w2 / w1
        if abs(tau) * slack >= 1:
            return Lattice(w1, w2)
        # (w1, w2) -> (w2, -w1) keeps the orientation.
        w1, w2 = w2, -w1
    raise DegenerateLattice("Gauss reduction did not terminate")


def coordinates(z, lat: Lattice, ctx: PrecisionContext) -> Coordinates:
    """Real (u, v) with z = u*w1 + v*w2."""
    mp = ctx.mp
    q = mp.mpc(z) / lat.w1
    tau = lat.tau
    v = q.imag / tau.imag
    u = q.real - v * tau.real
    return Coordinates(u, v)


def combine(u, v, lat: Lattice) -> CNum:
    return u * lat.w1 + v * lat.w2


def reduce_mod(z, lat: Lattice, mode: ReduceMode, ctx: PrecisionContext) -> CNum:
    """Subtract the lattice vector that brings the coordinates into range."""
    mp = ctx.mp
    c = coordinates(z, lat, ctx)
    shifts = []
    for x in (c.u, c.v):
        tol = ctx.eps_tie * max(1, abs(x))
        if mode is ReduceMode.CENTERED:
            k = int(mp.ceil(x - mp.mpf(0.5)))
            if abs(x - k + mp.mpf(0.5)) <= tol:
                k -= 1
        else:
            k = int(mp.floor(x))
            if abs(x - k - 1) <= tol:
                k += 1
        shifts.append(k)
    m, n = shifts
    return mp.mpc(z) - m * lat.w1 - n * lat.w2


def is_member(z, lat: Lattice, tol=None, ctx: PrecisionContext | None = None) -> bool:
    ctx = ctx or PrecisionContext()
    tol = ctx.member_tol if tol is None else tol
    c = coordinates(z, lat, ctx)
    return abs(c.u - ctx.mp.nint(c.u)) <= tol and abs(c.v - ctx.mp.nint(c.v)) <= tol


def is_primitive(z, lat: Lattice, tol=None, ctx: PrecisionContext | None = None) -> bool:
    ctx = ctx or PrecisionContext()
    if not is_member(z, lat, tol, ctx):
        return False
    m, n = coordinates(z, lat, ctx).rounded()
    return math.gcd(m, n) == 1


def is_rectangular(lat: Lattice, ctx: PrecisionContext) -> tuple[bool, Lattice | None]:
    """Detect a basis with Re(w2/w1) = 0 and return it when it exists."""
    red = reduce_basis(lat, ctx)
    tau = red.tau
    if abs(tau.real) <= ctx.eps_tie * abs(tau):
        return True, red
    return False, None


def shortest_vector(lat: Lattice, ctx: PrecisionContext) -> CNum:
    return reduce_basis(lat, ctx).w1


def same_lattice(l1: Lattice, l2: Lattice, tol, ctx: PrecisionContext) -> bool:
    return all(is_member(w, l2, tol, ctx) for w in (l1.w1, l1.w2)) and all(
        is_member(w, l1, tol, ctx) for w in (l2.w1, l2.w2)
    )
