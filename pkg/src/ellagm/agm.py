"""Complex arithmetic-geometric mean with explicit square-root choices.

A pair (a, b) is *good* when |a - b| <= |a + b|, i.e. Re(b/a) >= 0.  The
optimal AGM takes the good geometric mean at every step; a scheduled AGM
deliberately takes the bad one at a finite set of step indices.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DegeneratePair, NonConvergence
from .numerics import CNum, PrecisionContext, principal_sqrt


class PairStatus(enum.Enum):
    GOOD = "good"
    BAD = "bad"
    TIE = "tie"


@dataclass(frozen=True)
class AgmResult:
    m: CNum
    iterations: int
    tie_broken: bool = False
    schedule: frozenset = field(default_factory=frozenset)


def iteration_cap(ctx: PrecisionContext) -> int:
    return 8 * math.ceil(math.log2(ctx.work_bits)) + 64


def check_pair(a, b, ctx: PrecisionContext) -> None:
    """Raise DegeneratePair unless a, b != 0 and a != +-b."""
    scale = max(abs(a), abs(b))
    if a == 0 or b == 0 or abs(a) <= ctx.eps_tie * scale or abs(b) <= ctx.eps_tie * scale:
        raise DegeneratePair("AGM pair has a zero entry")
    if abs(a - b) <= ctx.eps_tie * scale or abs(a + b) <= ctx.eps_tie * scale:
        raise DegeneratePair("AGM pair has a = ±b")


def is_good(a, b, ctx: PrecisionContext) -> PairStatus:
    plus, minus = abs(a + b), abs(a - b)
    if abs(plus - minus) <= ctx.eps_tie * plus:
        return PairStatus.TIE
    return PairStatus.GOOD if minus < plus else PairStatus.BAD


def agm_step(a, b, ctx: PrecisionContext, flip: bool = False) -> tuple[CNum, CNum, bool]:
    """One AGM step; returns (a1, b1, tie) with (a1, b1) good unless ``flip``.

    On a tie the geometric mean is chosen with Im(a1/b1) > 0.
    """
    mp = ctx.mp
    a1 = (a + b) / 2
    if a1 == 0:
        raise DegeneratePair("a = -b gives a zero arithmetic mean")
    b1 = principal_sqrt(a * b, ctx)
    if b1 == 0:
        raise DegeneratePair("zero geometric mean")
    status = is_good(a1, b1, ctx)
    tie = status is PairStatus.TIE
    if status is PairStatus.BAD or (tie and mp.im(a1 / b1) < 0):
        b1 = -b1
    if flip:
        b1 = -b1
    return a1, b1, tie


def _converged(a, b, ctx: PrecisionContext) -> bool:
    return abs(a - b) <= ctx.eps_conv * abs(a)


def agm_scheduled(a, b, schedule, ctx: PrecisionContext) -> AgmResult:
    """Limit M_S(a, b): bad geometric mean at exactly the step indices in S."""
    mp = ctx.mp
    a, b = mp.mpc(a), mp.mpc(b)
    check_pair(a, b, ctx)
    schedule = frozenset(int(n) for n in schedule)
    if any(n < 1 for n in schedule):
        raise ValueError("schedule indices must be >= 1")
    last = max(schedule, default=0)
    cap = iteration_cap(ctx) + last
    n = 0
    tie_broken = False
    while n < last or not _converged(a, b, ctx):
        if n >= cap:
            raise NonConvergence(f"AGM did not converge in {cap} steps")
        n += 1
        a, b, tie = agm_step(a, b, ctx, flip=n in schedule)
        tie_broken |= tie and n not in schedule
    n += 1
    a, b, tie = agm_step(a, b, ctx)
    return AgmResult(m=a, iterations=n, tie_broken=tie_broken, schedule=schedule)


def agm_optimal(a, b, ctx: PrecisionContext) -> AgmResult:
    """The optimal AGM M(a, b), of maximal modulus among all AGM limits."""
    return agm_scheduled(a, b, (), ctx)


def agm(a, b, ctx: PrecisionContext) -> CNum:
    return agm_optimal(a, b, ctx).m


def agm_real(x, y, ctx: PrecisionContext):
    """Classical AGM of two positive reals, in real arithmetic only."""
    mp = ctx.mp
    x, y = mp.mpf(x), mp.mpf(y)
    if x <= 0 or y <= 0:
        raise DegeneratePair("real AGM needs positive arguments")
    cap = iteration_cap(ctx)
    for _ in range(cap):
        if abs(x - y) <= ctx.eps_conv * x:
            return (x + y) / 2
        x, y = (x + y) / 2, mp.sqrt(x * y)
    raise NonConvergence(f"real AGM did not converge in {cap} steps")
