"""Interval arithmetic: outward-rounded add, sub, mul and relational division.

Each operation computes the least representable interval containing the
exact solution set of its defining relation, dispatching on the sign
classes of the operands so that no kernel call ever sees an undefined
extended-real form.  Division is total: a divisor touching zero widens the
result (possibly to two half-lines, or the whole line) instead of raising.
"""

import math

from .core import (
    EMPTY,
    ZERO,
    Interval,
    IntervalClass,
    classify,
    format_interval,
    hull,
    make_interval,
)
from .fpkernel import BINARY64, DOWN, UP, FloatFormat, add_dir, div_dir, mul_dir, sub_dir

_INF = math.inf
_REAL_LINE = Interval(-_INF, _INF)


class DivResult:
    """Outcome of relational division: Empty, a single interval, or a
    Split into a negative and a positive half-line.

    parts is an empty tuple, a 1-tuple, or the (negative, positive) pair.
    Split parts satisfy neg.hi <= 0 <= pos.lo and are disjoint except
    possibly at zero.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: tuple):
        self.parts = parts

    @classmethod
    def single(cls, iv: Interval) -> "DivResult":
        return _EMPTY_RESULT if iv.is_empty else cls((iv,))

    @classmethod
    def split(cls, neg: Interval, pos: Interval) -> "DivResult":
        assert not neg.is_empty and not pos.is_empty
        assert neg.hi <= 0.0 <= pos.lo
        return cls((neg, pos))

    @property
    def is_empty(self) -> bool:
        return not self.parts

    @property
    def is_split(self) -> bool:
        return len(self.parts) == 2

    @property
    def interval(self) -> Interval:
        """Payload of a non-Split result (Empty collapses to EMPTY)."""
        if self.is_split:
            raise ValueError("Split result has no single interval")
        return self.parts[0] if self.parts else EMPTY

    def __eq__(self, other):
        if not isinstance(other, DivResult):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        if not self.parts:
            return "DivResult.EMPTY"
        return f"DivResult{self.parts!r}"

    def __str__(self):
        return format_div_result(self)


_EMPTY_RESULT = DivResult(())
DivResult.EMPTY = _EMPTY_RESULT


def format_div_result(res: DivResult, hexmode: bool = False,
                      union: str = "∪") -> str:
    if res.is_empty:
        return "Empty"
    return f" {union} ".join(format_interval(p, hexmode) for p in res.parts)


def add(x: Interval, y: Interval, fmt: FloatFormat = BINARY64) -> Interval:
    """Least interval containing {u + v : u in x, v in y}."""
    if x.is_empty or y.is_empty:
        return EMPTY
    return make_interval(add_dir(x.lo, y.lo, DOWN, fmt),
                         add_dir(x.hi, y.hi, UP, fmt))


def sub(x: Interval, y: Interval, fmt: FloatFormat = BINARY64) -> Interval:
    """Least interval containing {u - v : u in x, v in y}."""
    if x.is_empty or y.is_empty:
        return EMPTY
    return make_interval(sub_dir(x.lo, y.hi, DOWN, fmt),
                         sub_dir(x.hi, y.lo, UP, fmt))


def negate(x: Interval) -> Interval:
    """Exact negation (reflection through zero)."""
    if x.is_empty:
        return EMPTY
    return make_interval(-x.hi, -x.lo)


def mul(x: Interval, y: Interval, fmt: FloatFormat = BINARY64) -> Interval:
    """Least interval containing {u * v : u in x, v in y}.

    The sign-class dispatch picks the two endpoint products that bound the
    exact set (four in the straddling-times-straddling case, none when a
    zero singleton absorbs everything), so 0 * inf never reaches a kernel.
    """
    if x.is_empty or y.is_empty:
        return EMPTY
    cx = classify(x)
    cy = classify(y)
    if cx is IntervalClass.Z or cy is IntervalClass.Z:
        return ZERO
    a, b = x.lo, x.hi
    c, d = y.lo, y.hi
    if cx.is_p:
        if cy.is_p:
            lo, hi = mul_dir(a, c, DOWN, fmt), mul_dir(b, d, UP, fmt)
        elif cy is IntervalClass.M:
            lo, hi = mul_dir(b, c, DOWN, fmt), mul_dir(b, d, UP, fmt)
        else:
            lo, hi = mul_dir(b, c, DOWN, fmt), mul_dir(a, d, UP, fmt)
    elif cx is IntervalClass.M:
        if cy.is_p:
            lo, hi = mul_dir(a, d, DOWN, fmt), mul_dir(b, d, UP, fmt)
        elif cy is IntervalClass.M:
            lo = min(mul_dir(a, d, DOWN, fmt), mul_dir(b, c, DOWN, fmt))
            hi = max(mul_dir(a, c, UP, fmt), mul_dir(b, d, UP, fmt))
        else:
            lo, hi = mul_dir(b, c, DOWN, fmt), mul_dir(a, c, UP, fmt)
    else:
        if cy.is_p:
            lo, hi = mul_dir(a, d, DOWN, fmt), mul_dir(b, c, UP, fmt)
        elif cy is IntervalClass.M:
            lo, hi = mul_dir(a, d, DOWN, fmt), mul_dir(a, c, UP, fmt)
        else:
            lo, hi = mul_dir(b, d, DOWN, fmt), mul_dir(a, c, UP, fmt)
    return make_interval(lo, hi)


def div(x: Interval, y: Interval, fmt: FloatFormat = BINARY64) -> DivResult:
    """Solutions of z * v = u for u in x, v in y, tightly enclosed.

    When both operands contain zero, every z solves z * 0 = 0 and the
    result is the whole line; that one set-level test also covers every
    "divisor lower bound is zero" exception row, after which each
    remaining class combination is two directed divisions whose signed
    zero bounds produce the correct infinities on their own.  A zero
    divisor with a zero-free dividend has no solutions at all: Empty.
    """
    if x.is_empty or y.is_empty:
        return _EMPTY_RESULT
    zero_in_x = x.lo <= 0.0 <= x.hi
    zero_in_y = y.lo <= 0.0 <= y.hi
    if zero_in_x and zero_in_y:
        return DivResult.single(_REAL_LINE)
    cy = classify(y)
    if cy is IntervalClass.Z:
        return _EMPTY_RESULT
    cx = classify(x)
    if cx is IntervalClass.Z:
        return DivResult.single(ZERO)
    a, b = x.lo, x.hi
    c, d = y.lo, y.hi
    if cy.is_p:
        if cx is IntervalClass.P1:
            lo, hi = div_dir(a, d, DOWN, fmt), div_dir(b, c, UP, fmt)
        elif cx is IntervalClass.P0:
            lo, hi = 0.0, div_dir(b, c, UP, fmt)
        elif cx is IntervalClass.M:
            lo, hi = div_dir(a, c, DOWN, fmt), div_dir(b, c, UP, fmt)
        elif cx is IntervalClass.N0:
            lo, hi = div_dir(a, c, DOWN, fmt), -0.0
        else:
            lo, hi = div_dir(a, c, DOWN, fmt), div_dir(b, d, UP, fmt)
        return DivResult.single(make_interval(lo, hi))
    if cy.is_n:
        if cx is IntervalClass.P1:
            lo, hi = div_dir(b, d, DOWN, fmt), div_dir(a, c, UP, fmt)
        elif cx is IntervalClass.P0:
            lo, hi = div_dir(b, d, DOWN, fmt), -0.0
        elif cx is IntervalClass.M:
            lo, hi = div_dir(b, d, DOWN, fmt), div_dir(a, d, UP, fmt)
        elif cx is IntervalClass.N0:
            lo, hi = 0.0, div_dir(a, d, UP, fmt)
        else:
            lo, hi = div_dir(b, c, DOWN, fmt), div_dir(a, d, UP, fmt)
        return DivResult.single(make_interval(lo, hi))
    # Straddling divisor; dividend is zero-free (P1 or N1) at this point,
    # so the solution set is two half-lines around a gap at zero.
    if cx is IntervalClass.P1:
        neg = make_interval(-_INF, div_dir(a, c, UP, fmt))
        pos = make_interval(div_dir(a, d, DOWN, fmt), _INF)
    else:
        neg = make_interval(-_INF, div_dir(b, d, UP, fmt))
        pos = make_interval(div_dir(b, c, DOWN, fmt), _INF)
    return DivResult.split(neg, pos)


def hull_result(res: DivResult) -> Interval:
    """Collapse a division result to one interval (hull of its parts)."""
    if res.is_empty:
        return EMPTY
    if res.is_split:
        return hull(res.parts[0], res.parts[1])
    return res.parts[0]


def div_hull(x: Interval, y: Interval, fmt: FloatFormat = BINARY64) -> Interval:
    """Division for callers that want a single interval: hull of div."""
    return hull_result(div(x, y, fmt))
