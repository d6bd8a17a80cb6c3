"""Directed-rounding scalar kernels over binary floating-point formats.

Every kernel takes two format values and a rounding direction and returns
the correctly rounded directed result, with IEEE signed zeros and signed
infinities but never a NaN.  The undefined extended-real forms (inf - inf,
inf/inf, 0*inf, 0/0) are contract violations: the interval layer is built
so they cannot reach a kernel, and debug runs trap them with an assert.

Two rounding strategies live here.  The generic one converts the exact
rational result to the target format with integer arithmetic and works for
any format that embeds in binary64.  The native binary64 format overrides
the finite paths with round-to-nearest hardware ops plus exact error-sign
detection and a one-ulp nextafter nudge, which is much faster.
"""

import math
from enum import Enum
from fractions import Fraction


class RoundingDirection(Enum):
    """Directed rounding: DOWN toward -inf, UP toward +inf."""

    DOWN = "down"
    UP = "up"


class BoundSide(Enum):
    """Which end of an interval a bound sits on."""

    LOWER = "lower"
    UPPER = "upper"


DOWN = RoundingDirection.DOWN
UP = RoundingDirection.UP

_INF = math.inf

# Optional test hook: when set, every kernel call reports (op, a, b, direction)
# before computing.  Single-threaded test facility, not part of the public API.
_hook = None


class kernel_hook:
    """Context manager installing a callable observing every kernel call."""

    def __init__(self, fn):
        self.fn = fn
        self._saved = None

    def __enter__(self):
        global _hook
        self._saved = _hook
        _hook = self.fn
        return self.fn

    def __exit__(self, *exc):
        global _hook
        _hook = self._saved
        return False


def undefined_form(op: str, a: float, b: float) -> bool:
    """True when (a op b) is one of the extended-real undefined forms."""
    if op == "add":
        return math.isinf(a) and math.isinf(b) and (a > 0) != (b > 0)
    if op == "sub":
        return math.isinf(a) and math.isinf(b) and (a > 0) == (b > 0)
    if op == "mul":
        return (a == 0.0 and math.isinf(b)) or (math.isinf(a) and b == 0.0)
    if op == "div":
        return (a == 0.0 and b == 0.0) or (math.isinf(a) and math.isinf(b))
    raise ValueError(f"unknown kernel op {op!r}")


class FloatFormat:
    """A binary floating-point format with subnormals.

    p is the significand length in bits including the implicit leading bit,
    emin and emax bound the exponent of normal values.  Values of the format
    are represented as Python floats, so the format must embed exactly in
    binary64: p <= 53, emax <= 1023, emin - p + 1 >= -1074.
    """

    def __init__(self, p: int, emin: int, emax: int, cache: bool = False):
        if p < 2 or emax < emin:
            raise ValueError("bad format parameters")
        if p > 53 or emax > 1023 or emin - p + 1 < -1074:
            raise ValueError("format does not embed in binary64")
        self.p = p
        self.emin = emin
        self.emax = emax
        self.max_finite = math.ldexp((1 << p) - 1, emax - p + 1)
        self.min_subnormal = math.ldexp(1, emin - p + 1)
        self._cache = {} if cache else None

    def __repr__(self):
        return f"FloatFormat(p={self.p}, emin={self.emin}, emax={self.emax})"

    # -- rounding of exact rationals ------------------------------------

    def round_fraction(self, num: int, den: int, up: bool) -> float:
        """Directed rounding of the exact positive rational num/den.

        Returns the greatest format value <= num/den when up is false, the
        least format value >= num/den when up is true, where +inf counts as
        a format value above max_finite (so up can round past the top) and
        rounding down past the top clamps to max_finite.
        """
        assert num > 0 and den > 0
        # e = floor(log2(num/den)): bit lengths give e or e + 1, so drop by
        # one when num/den < 2^e, tested exactly with shifts.
        e = num.bit_length() - den.bit_length()
        if e >= 0:
            if num < den << e:
                e -= 1
        elif num << -e < den:
            e -= 1
        if e > self.emax:
            return _INF if up else self.max_finite
        # Quantum 2^q is the spacing of format values in this binade,
        # clamped at the bottom so subnormals come out right.
        q = max(e, self.emin) - (self.p - 1)
        if q >= 0:
            m, rem = divmod(num, den << q)
        else:
            m, rem = divmod(num << (-q), den)
        if up and rem:
            m += 1
        if m == 0:
            return 0.0
        if m.bit_length() - 1 + q > self.emax:
            return _INF
        return math.ldexp(m, q)

    def _round_signed(self, num: int, den: int, direction) -> float:
        """Directed rounding of num/den with num of either sign (not zero)."""
        if num > 0:
            return self.round_fraction(num, den, direction is UP)
        return -self.round_fraction(-num, den, direction is DOWN)

    # -- finite-path kernels (operands finite, exact result nonzero) ----

    def _add_finite(self, a: float, b: float, direction) -> float:
        na, da = a.as_integer_ratio()
        nb, db = b.as_integer_ratio()
        # Denominators are powers of two; align on the larger one.
        if da > db:
            nb *= da // db
            den = da
        else:
            na *= db // da
            den = db
        return self._round_signed(na + nb, den, direction)

    def _mul_finite(self, a: float, b: float, direction) -> float:
        na, da = a.as_integer_ratio()
        nb, db = b.as_integer_ratio()
        return self._round_signed(na * nb, da * db, direction)

    def _div_finite(self, a: float, b: float, direction) -> float:
        na, da = a.as_integer_ratio()
        nb, db = b.as_integer_ratio()
        num = na * db
        den = da * nb
        if den < 0:
            num, den = -num, -den
        return self._round_signed(num, den, direction)

    def _finite(self, op, a, b, direction):
        cache = self._cache
        if cache is None:
            return getattr(self, f"_{op}_finite")(a, b, direction)
        key = (op, a, b, direction is UP)
        hit = cache.get(key)
        if hit is None:
            hit = getattr(self, f"_{op}_finite")(a, b, direction)
            cache[key] = hit
        return hit

    # -- membership and enumeration --------------------------------------

    def is_value(self, v: float) -> bool:
        """True when the float v is exactly a value of this format."""
        if math.isinf(v) or v != v:
            return False
        if v == 0.0:
            return True
        num, den = abs(v).as_integer_ratio()
        return self.round_fraction(num, den, False) == abs(v)

    def finite_positive(self) -> list[float]:
        """All positive finite values, ascending.  Intended for small formats."""
        count = (1 << (self.p - 1)) * (self.emax - self.emin + 2)
        if count > 1 << 22:
            raise ValueError("format too large to enumerate")
        out = []
        for m in range(1, 1 << (self.p - 1)):  # subnormals
            out.append(math.ldexp(m, self.emin - self.p + 1))
        for e in range(self.emin, self.emax + 1):
            for m in range(1 << (self.p - 1), 1 << self.p):
                out.append(math.ldexp(m, e - self.p + 1))
        return out


class _Binary64(FloatFormat):
    """Native double precision with fast finite-path kernels."""

    # Above this magnitude the float-only error detection for addition may
    # itself overflow, so fall back to the exact integer path.
    _ADD_GUARD = math.ldexp(1, 1021)

    def __init__(self):
        super().__init__(53, -1022, 1023)

    def _nudge(self, r: float, exact_gt: bool, direction) -> float:
        """Step the round-to-nearest result r one ulp toward the exact value."""
        if direction is UP:
            return math.nextafter(r, _INF) if exact_gt else r
        return r if exact_gt else math.nextafter(r, -_INF)

    def _overflowed(self, positive: bool, direction) -> float:
        if positive:
            return _INF if direction is UP else self.max_finite
        return -self.max_finite if direction is UP else -_INF

    def _add_finite(self, a, b, direction):
        s = a + b
        if math.isinf(s):
            return self._overflowed(s > 0, direction)
        if abs(a) >= self._ADD_GUARD or abs(b) >= self._ADD_GUARD:
            return super()._add_finite(a, b, direction)
        # Two-sum error term: exact when nothing overflows, which the guard
        # above ensures.  err carries the sign of (exact - s).
        bv = s - a
        err = (a - (s - bv)) + (b - bv)
        if err == 0.0:
            return s
        return self._nudge(s, err > 0.0, direction)

    def _mul_finite(self, a, b, direction):
        r = a * b
        if math.isinf(r):
            return self._overflowed(r > 0, direction)
        na, da = a.as_integer_ratio()
        nb, db = b.as_integer_ratio()
        num = na * nb
        if r == 0.0:
            # Underflow below the subnormal range; exact result is nonzero.
            if num > 0:
                return self.min_subnormal if direction is UP else 0.0
            return -0.0 if direction is UP else -self.min_subnormal
        nr, dr = r.as_integer_ratio()
        lhs = num * dr
        rhs = nr * (da * db)
        if lhs == rhs:
            return r
        return self._nudge(r, lhs > rhs, direction)

    def _div_finite(self, a, b, direction):
        r = a / b
        if math.isinf(r):
            return self._overflowed(r > 0, direction)
        na, da = a.as_integer_ratio()
        nb, db = b.as_integer_ratio()
        num = na * db
        den = da * nb
        if den < 0:
            num, den = -num, -den
        if r == 0.0:
            if num > 0:
                return self.min_subnormal if direction is UP else 0.0
            return -0.0 if direction is UP else -self.min_subnormal
        nr, dr = r.as_integer_ratio()
        diff = num * dr - nr * den
        if diff == 0:
            return r
        return self._nudge(r, diff > 0, direction)


BINARY64 = _Binary64()


def _xor_sign(a: float, b: float) -> float:
    return math.copysign(1.0, a) * math.copysign(1.0, b)


def _cancel_zero(direction) -> float:
    # IEEE 754 sign rule for an exactly zero sum or difference of nonzero
    # (or opposite-signed zero) operands: -0 when rounding down, else +0.
    return -0.0 if direction is DOWN else 0.0


def add_dir(a: float, b: float, direction: RoundingDirection,
            fmt: FloatFormat = BINARY64) -> float:
    """Directed sum of two format values.  a and b must not be opposite infinities."""
    if _hook is not None:
        _hook("add", a, b, direction)
    assert a == a and b == b, "NaN operand in add kernel"
    if math.isinf(a):
        assert not (math.isinf(b) and (a > 0.0) != (b > 0.0)), "inf - inf form"
        return a
    if math.isinf(b):
        return b
    if a == 0.0 and b == 0.0:
        sa, sb = math.copysign(1.0, a), math.copysign(1.0, b)
        return a if sa == sb else _cancel_zero(direction)
    if a == -b:
        return _cancel_zero(direction)
    if a == 0.0:
        return b
    if b == 0.0:
        return a
    return fmt._finite("add", a, b, direction)


def sub_dir(a: float, b: float, direction: RoundingDirection,
            fmt: FloatFormat = BINARY64) -> float:
    """Directed difference of two format values.  Infinities must differ."""
    if _hook is not None:
        _hook("sub", a, b, direction)
    assert a == a and b == b, "NaN operand in sub kernel"
    if math.isinf(a):
        assert not (math.isinf(b) and (a > 0.0) == (b > 0.0)), "inf - inf form"
        return a
    if math.isinf(b):
        return -b
    if a == 0.0 and b == 0.0:
        sa, sb = math.copysign(1.0, a), math.copysign(1.0, b)
        return a if sa != sb else _cancel_zero(direction)
    if a == b:
        return _cancel_zero(direction)
    if b == 0.0:
        return a
    if a == 0.0:
        return -b
    return fmt._finite("add", a, -b, direction)


def mul_dir(a: float, b: float, direction: RoundingDirection,
            fmt: FloatFormat = BINARY64) -> float:
    """Directed product of two format values.  0*inf is a contract violation."""
    if _hook is not None:
        _hook("mul", a, b, direction)
    assert a == a and b == b, "NaN operand in mul kernel"
    if math.isinf(a) or math.isinf(b):
        assert a != 0.0 and b != 0.0, "0 * inf form"
        return math.copysign(_INF, _xor_sign(a, b))
    if a == 0.0 or b == 0.0:
        return math.copysign(0.0, _xor_sign(a, b))
    return fmt._finite("mul", a, b, direction)


def div_dir(a: float, b: float, direction: RoundingDirection,
            fmt: FloatFormat = BINARY64) -> float:
    """Directed quotient of two format values.

    Division by a signed zero gives the infinity of the combined sign, and
    a finite numerator over an infinity gives the zero of the combined
    sign; only 0/0 and inf/inf are contract violations.
    """
    if _hook is not None:
        _hook("div", a, b, direction)
    assert a == a and b == b, "NaN operand in div kernel"
    if math.isinf(b):
        assert not math.isinf(a), "inf / inf form"
        return math.copysign(0.0, _xor_sign(a, b))
    if b == 0.0 or math.isinf(a):
        assert b != 0.0 or a != 0.0, "0 / 0 form"
        return math.copysign(_INF, _xor_sign(a, b))
    if a == 0.0:
        return math.copysign(0.0, _xor_sign(a, b))
    return fmt._finite("div", a, b, direction)


def round_real_down(x, fmt: FloatFormat = BINARY64) -> float:
    """Greatest format value <= x, for an exact rational x (or +-inf)."""
    if isinstance(x, float) and math.isinf(x):
        return x
    frac = Fraction(x)
    if frac == 0:
        return 0.0
    return fmt._round_signed(frac.numerator, frac.denominator, DOWN)


def round_real_up(x, fmt: FloatFormat = BINARY64) -> float:
    """Least format value >= x, for an exact rational x (or +-inf)."""
    if isinstance(x, float) and math.isinf(x):
        return x
    frac = Fraction(x)
    if frac == 0:
        return 0.0
    return fmt._round_signed(frac.numerator, frac.denominator, UP)


def normalize_zero_bound(v: float, side: BoundSide) -> float:
    """Canonical zero sign for an interval bound: +0 below, -0 above."""
    if v == 0.0:
        return 0.0 if side is BoundSide.LOWER else -0.0
    return v
