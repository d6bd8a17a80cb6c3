"""Independent exact-arithmetic oracle over exhaustively enumerable formats.

Everything here is deliberately built without the classified endpoint
tables the operations module uses: solution sets are derived by splitting
each operand into sign-definite pieces and reasoning about monotonicity on
each quadrant, with exact rationals throughout, so a bug in the dispatch
tables cannot confirm itself.  Division by a piece that touches zero is
resolved algebraically (z * 0 = u has solutions exactly when u = 0); the
oracle never divides by zero.

The default miniature format (3 significand bits, exponents -2..2) has 46
nonzero finite values, small enough that every pair of intervals can be
checked against the oracle in one run.
"""

import math
from bisect import bisect_left, bisect_right
from fractions import Fraction

from .core import EMPTY, Interval, make_interval
from .fpkernel import FloatFormat

_INF = math.inf


def tiny_format(p: int = 3, emin: int = -2, emax: int = 2) -> FloatFormat:
    """An exhaustively enumerable format with cached kernels."""
    return FloatFormat(p, emin, emax, cache=True)


def enumerate_intervals(fmt: FloatFormat) -> list[Interval]:
    """Every normalized interval of the format, plus Empty at the end.

    Nonempty intervals are ordered by (lo, hi).  Lower bounds run over
    -inf, the nonzero finite values and +0; upper bounds over -0, the
    nonzero finite values and +inf.
    """
    pos = fmt.finite_positive()
    neg = [-v for v in reversed(pos)]
    lowers = [-_INF] + neg + [0.0] + pos
    uppers = neg + [-0.0] + pos + [_INF]
    out = []
    for i, lo in enumerate(lowers):
        # uppers[i - 1] equals lowers[i] in magnitude; smaller ones can't
        # close a nonempty interval, so start the scan there.
        for hi in uppers[max(i - 1, 0):]:
            if lo <= hi:
                out.append(Interval(lo, hi))
    out.append(EMPTY)
    return out


class _HashCachingFraction(Fraction):
    """Fraction whose (expensive) hash is computed once and reused.

    The oracle interns one instance per distinct corner value, so memo
    lookups keyed on these mostly hit the identity fast path.
    """

    __slots__ = ("_h",)

    def __hash__(self):
        h = getattr(self, "_h", None)
        if h is None:
            h = super().__hash__()
            self._h = h
        return h


class ExactSet:
    """Closure of an exact solution set: up to two disjoint components.

    components are (lo, hi) pairs of exact rationals (math.inf floats at
    unbounded ends), ascending.  punctured means the set omits the single
    point zero even though a component's closure reaches it; rounding the
    closure and rounding the punctured set agree, because every enumerated
    interval that contains a deleted neighborhood of zero contains zero.
    """

    __slots__ = ("components", "punctured")

    def __init__(self, components, punctured=False):
        self.components = tuple(components)
        self.punctured = bool(punctured)

    @property
    def is_empty(self):
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, ExactSet):
            return NotImplemented
        return (self.components, self.punctured) == (other.components, other.punctured)

    def __hash__(self):
        return hash((self.components, self.punctured))

    def __repr__(self):
        return f"ExactSet({list(self.components)!r}, punctured={self.punctured})"


# Exact corner values are format independent; one process-wide memo.
_CORNERS: dict = {}


def _corner(op: str, u: float, v: float) -> Fraction:
    """Exact value of u op v for finite operands (v nonzero for div).

    Signed zeros collide as dict keys, which is harmless here: a zero
    divisor never reaches this memo, and zero numerators and addends give
    the same exact value either way.
    """
    key = (op, u, v)
    val = _CORNERS.get(key)
    if val is None:
        fu, fv = Fraction(u), Fraction(v)
        if op == "add":
            r = fu + fv
        elif op == "sub":
            r = fu - fv
        elif op == "mul":
            r = fu * fv
        else:
            r = fu / fv
        val = _HashCachingFraction(r)
        _CORNERS[key] = val
    return val


class _Tables:
    """Per-format rounding memos over the enumerated value set."""

    def __init__(self, fmt: FloatFormat):
        self.fmt = fmt
        pos = fmt.finite_positive()
        self.finite = [-v for v in reversed(pos)] + [0.0] + pos
        self._phi_d = {0: 0.0}
        self._phi_u = {0: 0.0}
        self._item_d = {}
        self._item_u = {}
        self._pieces = {}

    def pieces(self, iv):
        """_sign_pieces memoized by bounds; inputs must be normalized, so
        the +0/-0 key collision cannot arise."""
        key = (iv.lo, iv.hi)
        p = self._pieces.get(key)
        if p is None:
            p = _sign_pieces(iv)
            self._pieces[key] = p
        return p

    def phi_down(self, val) -> float:
        """Greatest enumerated value <= val (else -inf); val exact."""
        if isinstance(val, float) and math.isinf(val):
            return val
        f = self._phi_d.get(val)
        if f is None:
            i = bisect_right(self.finite, val) - 1
            f = self.finite[i] if i >= 0 else -_INF
            self._phi_d[val] = f
        return f

    def phi_up(self, val) -> float:
        """Least enumerated value >= val (else +inf); val exact."""
        if isinstance(val, float) and math.isinf(val):
            return val
        f = self._phi_u.get(val)
        if f is None:
            i = bisect_left(self.finite, val)
            f = self.finite[i] if i < len(self.finite) else _INF
            self._phi_u[val] = f
        return f


def _tables(fmt: FloatFormat) -> _Tables:
    t = getattr(fmt, "_oracle_tables", None)
    if t is None:
        t = _Tables(fmt)
        fmt._oracle_tables = t
    return t


def oracle_phi(lo, hi, fmt: FloatFormat) -> Interval:
    """Least interval of fmt containing the real interval [lo, hi].

    Bounds are exact rationals, with math.inf floats at unbounded ends.
    This is the reference rounding: a search over the enumerated value
    set, sharing nothing with the kernel rounding arithmetic.
    """
    t = _tables(fmt)
    return make_interval(t.phi_down(lo), t.phi_up(hi))


# --- sign-quadrant decomposition --------------------------------------------


def _sign_pieces(iv: Interval):
    """Sign-definite pieces of a nonempty interval, clipped at zero.

    Each piece is (sign, lo, hi).  Clips carry the zero of the side they
    approach from (+0 below a positive piece, -0 above a negative one),
    which is what lets quotient corners pick the right infinity.
    """
    lo, hi = iv.lo, iv.hi
    pieces = []
    if lo < 0.0:
        pieces.append((-1, lo, hi if hi < 0.0 else -0.0))
    if lo <= 0.0 <= hi:
        pieces.append((0, 0.0, 0.0))
    if hi > 0.0:
        pieces.append((1, lo if lo > 0.0 else 0.0, hi))
    return pieces


def _mul_corners(xp, yp):
    """Corner pairs bounding {u*v} over two nonzero-sign pieces: the
    product is monotone in each coordinate once signs are fixed, so one
    corner gives the infimum and the diagonally opposite one the supremum."""
    sx, xl, xh = xp
    sy, yl, yh = yp
    if sx > 0:
        if sy > 0:
            return (xl, yl), (xh, yh)
        return (xh, yl), (xl, yh)
    if sy > 0:
        return (xl, yh), (xh, yl)
    return (xh, yh), (xl, yl)


# Bound items: int 0, a float +-inf, or a deferred exact corner
# ("op", u, v).  Plans carry items so the exact and the rounded consumers
# can share the quadrant analysis verbatim.


def _mul_item(u: float, v: float):
    """Item for a corner product.  Zero never meets an infinity here: the
    corner selection pairs a zero clip only with the near corner of the
    other piece, and infinities only sit at far corners."""
    if u == 0.0 or v == 0.0:
        assert not (math.isinf(u) or math.isinf(v))
        return 0
    if math.isinf(u) or math.isinf(v):
        return math.copysign(_INF, math.copysign(1.0, u) * math.copysign(1.0, v))
    return ("mul", u, v)


def _quot_item(u: float, v: float):
    """Item for a corner quotient.  A zero divisor only appears as a clip,
    so its sign encodes the approach side and picks the infinity; 0/0 and
    inf/inf are impossible by corner selection."""
    if u == 0.0:
        assert v != 0.0
        return 0
    if v == 0.0 or math.isinf(u):
        assert not (math.isinf(u) and math.isinf(v))
        return math.copysign(_INF, math.copysign(1.0, u) * math.copysign(1.0, v))
    if math.isinf(v):
        return 0
    return ("div", u, v)


def _item_exact(item):
    if isinstance(item, tuple):
        return _corner(*item)
    return item


def _item_down(item, t: _Tables) -> float:
    if isinstance(item, tuple):
        memo = t._item_d
        f = memo.get(item)
        if f is None:
            f = t.phi_down(_corner(*item))
            memo[item] = f
        return f
    return 0.0 if item == 0 else item


def _item_up(item, t: _Tables) -> float:
    if isinstance(item, tuple):
        memo = t._item_u
        f = memo.get(item)
        if f is None:
            f = t.phi_up(_corner(*item))
            memo[item] = f
        return f
    return 0.0 if item == 0 else item


# --- solution-set plans ------------------------------------------------------

# A plan is ("empty",), ("line",), or ("blocks", blocks, merge) where each
# block is (lo_items, hi_items), its exact bounds are min over lo_items and
# max over hi_items, and merge says the two blocks meet at zero.


def _add_plan(x: Interval, y: Interval, op: str):
    a, b = x.lo, x.hi
    # Subtraction pairs each bound with the other operand's opposite one.
    c, d = (y.lo, y.hi) if op == "add" else (y.hi, y.lo)
    lo = -_INF if (math.isinf(a) or math.isinf(c)) else (op, a, c)
    hi = _INF if (math.isinf(b) or math.isinf(d)) else (op, b, d)
    return ("blocks", [([lo], [hi])], False)


def _mul_plan(x: Interval, y: Interval, t: _Tables = None):
    xps = _sign_pieces(x) if t is None else t.pieces(x)
    yps = _sign_pieces(y) if t is None else t.pieces(y)
    lo_items, hi_items = [], []
    for xp in xps:
        for yp in yps:
            if xp[0] == 0 or yp[0] == 0:
                lo_items.append(0)
                hi_items.append(0)
            else:
                clo, chi = _mul_corners(xp, yp)
                lo_items.append(_mul_item(*clo))
                hi_items.append(_mul_item(*chi))
    return ("blocks", [(lo_items, hi_items)], False)


def _div_plan(x: Interval, y: Interval, functional: bool, t: _Tables = None):
    """Solution set of z*v = u (u in x, v in y); functional restricts to
    v != 0.  The v = 0 slice is handled algebraically: it contributes
    everything when 0 is in x and nothing otherwise.  Divisor pieces
    touching zero enter through signed-zero clips, and the two divisor-sign
    blocks meet exactly when 0 is in x."""
    zero_in_x = x.lo <= 0.0 <= x.hi
    if not functional and zero_in_x and y.lo <= 0.0 <= y.hi:
        return ("line",)
    pieces = _sign_pieces(x) if t is None else t.pieces(x)
    blocks = []
    c, d = y.lo, y.hi
    if d > 0.0:
        cl = c if c > 0.0 else 0.0
        lo_items, hi_items = [], []
        for s, xl, xh in pieces:
            if s == 0:
                lo_items.append(0)
                hi_items.append(0)
            elif s > 0:
                lo_items.append(_quot_item(xl, d))
                hi_items.append(_quot_item(xh, cl))
            else:
                lo_items.append(_quot_item(xl, cl))
                hi_items.append(_quot_item(xh, d))
        blocks.append((lo_items, hi_items))
    if c < 0.0:
        dr = d if d < 0.0 else -0.0
        lo_items, hi_items = [], []
        for s, xl, xh in pieces:
            if s == 0:
                lo_items.append(0)
                hi_items.append(0)
            elif s > 0:
                lo_items.append(_quot_item(xh, dr))
                hi_items.append(_quot_item(xl, c))
            else:
                lo_items.append(_quot_item(xh, c))
                hi_items.append(_quot_item(xl, dr))
        blocks.append((lo_items, hi_items))
    if not blocks:
        return ("empty",)
    return ("blocks", blocks, len(blocks) == 2 and zero_in_x)


def _plan(op: str, x: Interval, y: Interval, t: _Tables = None):
    if op in ("add", "sub"):
        return _add_plan(x, y, op)
    if op == "mul":
        return _mul_plan(x, y, t)
    if op == "div_rel":
        return _div_plan(x, y, functional=False, t=t)
    if op == "div_fun":
        return _div_plan(x, y, functional=True, t=t)
    raise ValueError(f"unknown oracle op {op!r}")


def oracle_op(op: str, x: Interval, y: Interval) -> ExactSet:
    """Exact solution set (closure) of x op y over the reals.

    op is one of add, sub, mul, div_rel, div_fun; operands must be
    nonempty.  Division results may be empty, one component, or two, and
    are flagged punctured when they reach zero without containing it."""
    assert not (x.is_empty or y.is_empty)
    plan = _plan(op, x, y)
    kind = plan[0]
    if kind == "line":
        return ExactSet([(-_INF, _INF)])
    if kind == "empty":
        return ExactSet([])
    _, blocks, merge = plan
    comps = [(min(_item_exact(i) for i in lo_items),
              max(_item_exact(i) for i in hi_items))
             for lo_items, hi_items in blocks]
    if merge:
        comps = [(min(c[0] for c in comps), max(c[1] for c in comps))]
    else:
        comps.sort(key=lambda c: c[0])
    punctured = False
    if op in ("div_rel", "div_fun") and not (x.lo <= 0.0 <= x.hi):
        punctured = any(lo <= 0 <= hi for lo, hi in comps)
    return ExactSet(comps, punctured)


def oracle_interval(op: str, x: Interval, y: Interval, fmt: FloatFormat) -> Interval:
    """Least fmt-interval containing the exact solution set (its hull)."""
    s = oracle_op(op, x, y)
    if s.is_empty:
        return EMPTY
    t = _tables(fmt)
    return make_interval(t.phi_down(s.components[0][0]),
                         t.phi_up(s.components[-1][1]))


# --- rounded fast path, shared plan ------------------------------------------

# The sweep compares millions of pairs; these consumers evaluate the same
# plans but round each corner immediately, so min/max runs over floats and
# all exact values hit the memo tables.  Rounding commutes with min and
# max because it is monotone.


def expected_bounds(op: str, x: Interval, y: Interval, fmt: FloatFormat):
    """(lo, hi) floats of the rounded oracle set for add, sub or mul,
    whose plans are always a single block."""
    t = _tables(fmt)
    _, blocks, _ = _plan(op, x, y, t)
    (lo_items, hi_items), = blocks
    if len(lo_items) == 1:
        return _item_down(lo_items[0], t), _item_up(hi_items[0], t)
    lo = _INF
    for i in lo_items:
        f = _item_down(i, t)
        if f < lo:
            lo = f
    hi = -_INF
    for i in hi_items:
        f = _item_up(i, t)
        if f > hi:
            hi = f
    return lo, hi


def expected_div(x: Interval, y: Interval, fmt: FloatFormat, functional=False):
    """Oracle division result, rounded: a list of 0, 1 or 2 (lo, hi) float
    pairs, components ascending."""
    t = _tables(fmt)
    plan = _div_plan(x, y, functional, t)
    if plan[0] == "line":
        return [(-_INF, _INF)]
    if plan[0] == "empty":
        return []
    _, blocks, merge = plan
    comps = []
    for lo_items, hi_items in blocks:
        lo = _INF
        for i in lo_items:
            f = _item_down(i, t)
            if f < lo:
                lo = f
        hi = -_INF
        for i in hi_items:
            f = _item_up(i, t)
            if f > hi:
                hi = f
        comps.append((lo, hi))
    if merge:
        return [(min(comps[0][0], comps[1][0]), max(comps[0][1], comps[1][1]))]
    if len(comps) == 2 and comps[1][0] < comps[0][0]:
        comps.reverse()
    return comps
