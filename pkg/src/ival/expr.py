"""Small expression language over intervals.

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | '(' expr ')' | literal
    literal := '[' bound ',' bound ']' | number
    bound   := ('+' | '-')? ('inf' | number)
    number  := decimal or hexadecimal float literal (0x1.8p+1)

A number literal denotes the tightest interval enclosing its exact value,
so "0.1" is one ulp wide while "0x1.999999999999ap-4" is a point.  Bounds
round outward: the lower down, the upper up.

Division is the relational one and may return a two-part result.  When a
split result feeds another operation it is collapsed to its hull first;
evaluate() reports that through the warn callback so a caller in split
mode can tell the final answer lost the gap.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .core import Interval, make_interval
from .fpkernel import BINARY64, FloatFormat, round_real_down, round_real_up
from .ops import DivResult, add, div, hull_result, mul, negate, sub


class ParseError(ValueError):
    """Syntax error with the offset where it happened."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class PointLit:
    text: str


@dataclass(frozen=True)
class IntervalLit:
    lo_sign: str
    lo_text: str
    hi_sign: str
    hi_text: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


_TOKEN = re.compile(
    r"""\s*(?:
      (?P<hex>0[xX][0-9a-fA-F]+(?:\.[0-9a-fA-F]*)?[pP][+-]?\d+)
    | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    | (?P<inf>inf\b)
    | (?P<sym>[\[\](),+*/-])
    )""",
    re.VERBOSE,
)


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = n - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup == "sym":
            toks.append((m.group("sym"), m.group("sym"), m.start("sym")))
        else:
            toks.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, what=None):
        t = self.next()
        if t[0] != kind:
            shown = repr(t[1]) if t[1] else "end of input"
            raise ParseError(f"expected {what or kind}, found {shown}", t[2])
        return t

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            node = BinOp("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()[0]
            node = BinOp("mul" if op == "*" else "div", node, self.factor())
        return node

    def factor(self):
        kind, text, at = self.toks[self.i]
        if kind == "-":
            self.next()
            return Neg(self.factor())
        if kind == "(":
            self.next()
            node = self.expr()
            self.expect(")", "')'")
            return node
        if kind == "[":
            self.next()
            lo_sign, lo = self.bound()
            self.expect(",", "','")
            hi_sign, hi = self.bound()
            self.expect("]", "']'")
            return IntervalLit(lo_sign, lo, hi_sign, hi)
        if kind in ("num", "hex"):
            self.next()
            return PointLit(text)
        shown = repr(text) if text else "end of input"
        raise ParseError(f"expected a value, found {shown}", at)

    def bound(self):
        sign = ""
        if self.peek() in ("+", "-"):
            sign = self.next()[0]
        kind, text, at = self.next()
        if kind not in ("num", "hex", "inf"):
            shown = repr(text) if text else "end of input"
            raise ParseError(f"expected an interval bound, found {shown}", at)
        return sign, text


def parse(text: str):
    """Parse an expression, returning its tree; raises ParseError."""
    p = _Parser(_tokenize(text))
    node = p.expr()
    p.expect("end", "end of input")
    return node


def _hex_fraction(text: str) -> Fraction:
    # Exact value of a hex float literal of any magnitude; float.fromhex
    # would overflow past binary64.
    body, _, exp = text[2:].lower().partition("p")
    intpart, _, frac = body.partition(".")
    digits = (intpart + frac) or "0"
    return Fraction(int(digits, 16), 16 ** len(frac)) * Fraction(2) ** int(exp)


def _bound_value(sign: str, text: str):
    if text == "inf":
        return -math.inf if sign == "-" else math.inf
    val = _hex_fraction(text) if text[:2].lower() == "0x" else Fraction(text)
    return -val if sign == "-" else val


def _collapse(res: DivResult, warn) -> Interval:
    if res.is_split and warn is not None:
        warn("split result collapsed to its hull inside a larger expression")
    return hull_result(res)


def evaluate(node, fmt: FloatFormat = BINARY64, split_div: bool = False,
             warn=None) -> DivResult:
    """Evaluate a parsed tree to a division-shaped result.

    With split_div a toplevel division may come back in two parts;
    otherwise every division is collapsed to its hull on the spot.  warn
    (a callable taking a message) fires whenever a split is collapsed
    because it fed a further operation.
    """
    if isinstance(node, PointLit):
        val = (_hex_fraction(node.text) if node.text[:2].lower() == "0x"
               else Fraction(node.text))
        return DivResult.single(
            make_interval(round_real_down(val, fmt), round_real_up(val, fmt)))
    if isinstance(node, IntervalLit):
        lo = _bound_value(node.lo_sign, node.lo_text)
        hi = _bound_value(node.hi_sign, node.hi_text)
        lo_f = lo if isinstance(lo, float) else round_real_down(lo, fmt)
        hi_f = hi if isinstance(hi, float) else round_real_up(hi, fmt)
        return DivResult.single(make_interval(lo_f, hi_f))
    if isinstance(node, Neg):
        inner = evaluate(node.operand, fmt, split_div, warn)
        # Negating both parts keeps a split exact: the order just flips.
        parts = tuple(negate(p) for p in reversed(inner.parts))
        if len(parts) == 2:
            return DivResult.split(parts[0], parts[1])
        return DivResult.single(parts[0]) if parts else DivResult.EMPTY
    if isinstance(node, BinOp):
        left = _collapse(evaluate(node.left, fmt, split_div, warn),
                         warn if split_div else None)
        right = _collapse(evaluate(node.right, fmt, split_div, warn),
                          warn if split_div else None)
        if node.op == "div":
            res = div(left, right, fmt)
            return res if split_div else DivResult.single(hull_result(res))
        fn = {"add": add, "sub": sub, "mul": mul}[node.op]
        return DivResult.single(fn(left, right, fmt))
    raise TypeError(f"not an expression node: {node!r}")
