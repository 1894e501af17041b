"""Working precision, principal branches and decimal serialization.

Every computation is carried out in an mpmath context private to its
working precision, so nothing here touches the global ``mpmath.mp``.
Complex values are plain ``mpc`` objects from that context.
"""

from __future__ import annotations

import decimal
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from .errors import ParseError, PoleError

LOG2_10 = math.log2(10)

CNum = mpmath.mpc


@lru_cache(maxsize=None)
def _context(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def default_guard_bits(target_digits: int) -> int:
    return max(64, math.ceil(target_digits / 4 * LOG2_10))


@dataclass(frozen=True)
class PrecisionContext:
    """Precision settings shared by one computation.

    ``work_bits`` is derived from the decimal target plus guard bits;
    ``eps_conv`` and ``eps_tie`` are the relative thresholds used for
    convergence and for tie detection respectively.
    """

    target_digits: int = 100
    guard_bits: int = field(default=0)

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_bits == 0:
            object.__setattr__(self, "guard_bits", default_guard_bits(self.target_digits))
        if self.guard_bits < 64:
            raise ValueError("guard_bits must be at least 64")

    @property
    def work_bits(self) -> int:
        return math.ceil(self.target_digits * LOG2_10) + self.guard_bits

    @property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        return _context(self.work_bits)

    @property
    def eps_conv(self):
        return self.mp.ldexp(1, -self.work_bits + 2)

    @property
    def eps_tie(self):
        return self.mp.ldexp(1, -self.work_bits + 8)

    @property
    def member_tol(self):
        """Default lattice-membership tolerance, 2^(-work_bits/2)."""
        return self.mp.ldexp(1, -(self.work_bits // 2))

    @property
    def curve_tol(self):
        """Relative tolerance for a point to count as lying on a curve, 10^(-digits/2)."""
        return self.mp.mpf(10) ** (-self.mp.mpf(self.target_digits) / 2)

    @property
    def pi(self):
        return self.mp.pi

    def cnum(self, value) -> CNum:
        """Convert ints, floats, complex, decimal strings or mpmath values."""
        if isinstance(value, str):
            return parse_cnum(value, self)
        if isinstance(value, decimal.Decimal):
            return self.mp.mpc(self.mp.mpf(str(value)))
        return self.mp.mpc(value)

    def real(self, value):
        if isinstance(value, decimal.Decimal):
            value = str(value)
        return self.mp.mpf(value)

    def with_digits(self, target_digits: int) -> PrecisionContext:
        return PrecisionContext(target_digits)


def principal_sqrt(z, ctx: PrecisionContext) -> CNum:
    """Square root with Re >= 0; purely imaginary results have Im >= 0."""
    mp = ctx.mp
    w = mp.sqrt(mp.mpc(z))
    if w.real < 0 or (w.real == 0 and w.imag < 0):
        w = -w
    return w


def principal_arctan(z, ctx: PrecisionContext) -> CNum:
    """Inverse tangent with -pi/2 < Re(result) <= pi/2."""
    mp = ctx.mp
    z = mp.mpc(z)
    i = mp.mpc(0, 1)
    if abs(z - i) <= ctx.eps_tie or abs(z + i) <= ctx.eps_tie:
        raise PoleError(f"arctan has a pole at {format_cnum(z, 10)}")
    w = mp.atan(z)
    half_pi = mp.pi / 2
    # mpmath puts the cut z = iy, y < -1 at Re = -pi/2; move it to +pi/2.
    if w.real <= -half_pi + ctx.eps_tie:
        w += mp.pi
    elif w.real > half_pi + ctx.eps_tie:
        w -= mp.pi
    return w


# -- decimal serialization --------------------------------------------------

def to_decimal(x) -> decimal.Decimal:
    """Exact decimal expansion of a binary mpf."""
    if not hasattr(x, "_mpf_"):
        x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    if not man:
        if exp:
            raise ValueError("cannot serialize a non-finite value")
        return decimal.Decimal(0)
    man = int(man)
    if exp >= 0:
        value = decimal.Decimal(man << exp)
    else:
        digits = man * 5 ** (-exp)
        value = decimal.Decimal(digits).scaleb(exp, decimal.Context(prec=len(str(digits)) + 2))
    return value.copy_negate() if sign else value


def format_real(x, digits: int) -> str:
    """Fixed-point string with ``digits`` places, rounded half-even."""
    exact = to_decimal(x)
    quantum = decimal.Decimal(1).scaleb(-digits)
    with decimal.localcontext() as dctx:
        dctx.prec = max(len(str(int(abs(exact)))) + digits + 10, 28)
        q = exact.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN)
    if q == 0:
        q = abs(q)
    return format(q, "f")


def format_cnum(z, digits: int) -> str:
    """Render ``z`` in the literal grammar accepted by :func:`parse_cnum`."""
    z = mpmath.mpc(z) if not hasattr(z, "_mpc_") else z
    re_s = format_real(z.real, digits)
    im_s = format_real(z.imag, digits)
    if im_s.startswith("-"):
        return f"{re_s}-{im_s[1:]}i"
    return f"{re_s}+{im_s}i"


def cnum_to_json(z, digits: int) -> dict:
    return {"re": format_real(z.real, digits), "im": format_real(z.imag, digits)}


def cnum_from_json(obj: dict, ctx: PrecisionContext) -> CNum:
    try:
        re_s, im_s = obj["re"], obj["im"]
    except (KeyError, TypeError):
        raise ParseError("expected an object with 're' and 'im'", str(obj), 0) from None
    if not isinstance(re_s, str) or not isinstance(im_s, str):
        raise ParseError("JSON numbers must be strings", str(obj), 0)
    for s in (re_s, im_s):
        end = _scan_decimal(s, 1 if s[:1] in "+-" else 0)
        if end != len(s) or end == (1 if s[:1] in "+-" else 0):
            raise ParseError("malformed decimal", s, end)
    return ctx.mp.mpc(ctx.mp.mpf(re_s), ctx.mp.mpf(im_s))


_DIGITS = re.compile(r"[0-9]*")


def _scan_decimal(text: str, pos: int) -> int:
    """Return the end of the longest decimal literal at ``pos`` (== pos if none)."""
    start = pos
    m = _DIGITS.match(text, pos)
    int_end = m.end()
    frac_digits = 0
    pos = int_end
    if pos < len(text) and text[pos] == ".":
        m = _DIGITS.match(text, pos + 1)
        frac_digits = m.end() - pos - 1
        if int_end == start and frac_digits == 0:
            return start
        pos = m.end()
    elif int_end == start:
        return start
    if pos < len(text) and text[pos] in "eE":
        q = pos + 1
        if q < len(text) and text[q] in "+-":
            q += 1
        m = _DIGITS.match(text, q)
        if m.end() > q:
            pos = m.end()
    return pos


def parse_cnum(text: str, ctx: PrecisionContext) -> CNum:
    """Parse ``3-2i``, ``-0.5+1.25i``, ``1e-3``, ``-i`` and similar literals."""
    s = text.strip()
    mp = ctx.mp
    n = len(s)
    pos = 0
    if not s:
        raise ParseError("empty complex literal", text, 0)

    sign1 = 1
    if s[pos] in "+-":
        sign1 = -1 if s[pos] == "-" else 1
        pos += 1
    end = _scan_decimal(s, pos)
    first = s[pos:end]
    pos = end

    if pos == n:
        if not first:
            raise ParseError("expected a number", text, pos)
        return mp.mpc(sign1 * mp.mpf(first))

    if s[pos] == "i":
        if pos + 1 != n:
            raise ParseError("unexpected trailing characters", text, pos + 1)
        mag = mp.mpf(first) if first else mp.mpf(1)
        return mp.mpc(0, sign1 * mag)

    if s[pos] not in "+-" or not first:
        raise ParseError("unexpected character", text, pos)
    sign2 = -1 if s[pos] == "-" else 1
    pos += 1
    end = _scan_decimal(s, pos)
    second = s[pos:end]
    pos = end
    if pos >= n or s[pos] != "i":
        raise ParseError("expected 'i'", text, pos)
    if pos + 1 != n:
        raise ParseError("unexpected trailing characters", text, pos + 1)
    mag = mp.mpf(second) if second else mp.mpf(1)
    return mp.mpc(sign1 * mp.mpf(first), sign2 * mag)
