"""Closed floating-point intervals with normalized signed-zero bounds.

An interval is either Empty or the set {x : lo <= x <= hi} for two format
values lo <= hi, where lo is never +inf, hi is never -inf, and neither is
ever NaN.  A zero lower bound is always +0 and a zero upper bound always
-0, so <+0,-0> is the canonical singleton {0} and every interval has
exactly one representation.  That convention is what lets division by an
interval touching zero produce the infinity of the right sign with no
special-case branch.
"""

import math
from enum import Enum
from fractions import Fraction

from .fpkernel import (
    BINARY64,
    FloatFormat,
    round_real_down,
    round_real_up,
)


class Interval:
    """A closed interval over format values, or the canonical Empty.

    Instances are created through make_interval, which normalizes zero
    signs and collapses every empty case onto the EMPTY singleton; the raw
    constructor performs no checks.  Treat instances as immutable.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        self.lo = lo
        self.hi = hi

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def _key(self):
        return (self.lo, math.copysign(1.0, self.lo),
                self.hi, math.copysign(1.0, self.hi))

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        # Bitwise comparison: +0 and -0 bounds are distinct representations,
        # though normalization means mixed zero signs only appear on
        # opposite sides.
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_empty:
            return "Interval.EMPTY"
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self):
        return format_interval(self)


EMPTY = Interval(math.inf, -math.inf)
Interval.EMPTY = EMPTY

ZERO = Interval(0.0, -0.0)


class IntervalClass(Enum):
    """Sign classification of a nonempty interval.

    M straddles zero, Z is the zero singleton, P0/P1 are nonnegative
    (with and without zero), N0/N1 nonpositive.  P means P0 or P1 and
    N means N0 or N1.
    """

    M = "M"
    Z = "Z"
    P0 = "P0"
    P1 = "P1"
    N0 = "N0"
    N1 = "N1"

    @property
    def is_p(self) -> bool:
        return self in (IntervalClass.P0, IntervalClass.P1)

    @property
    def is_n(self) -> bool:
        return self in (IntervalClass.N0, IntervalClass.N1)


def make_interval(lo: float, hi: float) -> Interval:
    """Total constructor: normalizes zero bounds, maps invalid pairs to Empty.

    lo > hi, lo = +inf and hi = -inf all give Empty.  NaN is the one
    caller bug this cannot absorb and raises ValueError.
    """
    if type(lo) is not float:
        lo = float(lo)
    if type(hi) is not float:
        hi = float(hi)
    if lo != lo or hi != hi:
        raise ValueError("NaN interval bound")
    if lo > hi or lo == math.inf or hi == -math.inf:
        return EMPTY
    if lo == 0.0:
        lo = 0.0
    if hi == 0.0:
        hi = -0.0
    return Interval(lo, hi)


def classify(x: Interval) -> IntervalClass:
    """Sign class of a nonempty interval; Empty raises ValueError."""
    if x.is_empty:
        raise ValueError("cannot classify Empty")
    lo, hi = x.lo, x.hi
    if lo < 0.0:
        if hi > 0.0:
            return IntervalClass.M
        return IntervalClass.N0 if hi == 0.0 else IntervalClass.N1
    if lo == 0.0:
        return IntervalClass.Z if hi == 0.0 else IntervalClass.P0
    return IntervalClass.P1


def member(x, iv: Interval) -> bool:
    """Exact membership test; x may be int, Fraction, or float.

    An infinite bound is notation for unboundedness, not a member, so
    member(inf, <0,inf>) is False.
    """
    if iv.is_empty:
        return False
    if isinstance(x, float) and math.isinf(x):
        return False
    return iv.lo <= x <= iv.hi


def intersect(x: Interval, y: Interval) -> Interval:
    """Set intersection; disjoint operands give Empty."""
    if x.is_empty or y.is_empty:
        return EMPTY
    return make_interval(max(x.lo, y.lo), min(x.hi, y.hi))


def hull(x: Interval, y: Interval) -> Interval:
    """Least interval containing both operands; Empty is the identity."""
    if x.is_empty:
        return y
    if y.is_empty:
        return x
    return make_interval(min(x.lo, y.lo), max(x.hi, y.hi))


def phi_point(x, fmt: FloatFormat = BINARY64) -> Interval:
    """Least interval of the format containing the exact rational x."""
    frac = Fraction(x)
    return make_interval(round_real_down(frac, fmt), round_real_up(frac, fmt))


def format_bound(v: float, hexmode: bool = False) -> str:
    """Render one bound.  Decimal mode shortens integral values; hex mode
    round-trips bit-exactly through float.fromhex."""
    if hexmode:
        return v.hex()
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    if v == 0.0:
        return "-0" if math.copysign(1.0, v) < 0 else "0"
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def format_interval(iv: Interval, hexmode: bool = False) -> str:
    if iv.is_empty:
        return "Empty"
    return f"[{format_bound(iv.lo, hexmode)},{format_bound(iv.hi, hexmode)}]"
