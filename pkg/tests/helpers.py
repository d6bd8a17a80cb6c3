"""Shared test utilities: random interval generation and exact membership checks.

Everything here is deliberately independent of the library's own rounding
kernels so that containment checks cannot inherit a kernel bug.
"""

import math
import random
import struct
from fractions import Fraction

import numpy as np

from ival import Interval, make_interval

# Finite stand-in range when sampling members of unbounded intervals.
BIG = 1e300


def random_float_pool(rng, n, specials_every=16):
    """n finite-or-infinite float64 values from raw bit patterns.

    Raw 64-bit draws cover the whole exponent range (heavy on the weird
    magnitudes a uniform draw never reaches); every specials_every-th slot
    is overwritten with a hand-picked edge value.
    """
    bits = rng.integers(0, 2**64, size=n, dtype=np.uint64)
    vals = bits.view(np.float64).copy()
    nan = np.isnan(vals)
    vals[nan] = 1.0  # NaN never enters an interval; replace, don't reject
    edge = np.array(
        [0.0, -0.0, math.inf, -math.inf, 1.0, -1.0,
         5e-324, -5e-324, 1.7976931348623157e308, -2.2250738585072014e-308],
        dtype=np.float64,
    )
    idx = np.arange(0, n, specials_every)
    vals[idx] = edge[rng.integers(0, len(edge), size=len(idx))]
    return vals


def random_intervals(rng, n, allow_empty=False):
    """n normalized intervals with bit-pattern-random bounds."""
    a = random_float_pool(rng, n)
    b = random_float_pool(rng, n)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    out = []
    for l, h in zip(lo.tolist(), hi.tolist()):
        iv = make_interval(l, h)
        if iv.is_empty and not allow_empty:
            iv = make_interval(0.0, h) if h == h and h >= 0 else make_interval(-1.0, 1.0)
        out.append(iv)
    return out


def sample_member(rng, iv):
    """One float member of a nonempty interval (clamped for inf bounds)."""
    lo = max(iv.lo, -BIG)
    hi = min(iv.hi, BIG)
    if lo == hi:
        return lo
    # Uniform between clamped bounds; degenerate spans fall back to an endpoint.
    x = rng.uniform(lo, hi)
    if not lo <= x <= hi or x != x:
        x = lo
    return x


def member_exact(q, lo, hi):
    """Is the exact rational q inside [lo, hi] (float bounds, inf allowed)?"""
    if lo > hi:
        return False
    if lo != -math.inf and q < Fraction(lo):
        return False
    if hi != math.inf and q > Fraction(hi):
        return False
    return True


def in_some_part(q, parts):
    return any(member_exact(q, p.lo, p.hi) for p in parts)


def bits_of(x):
    """Raw float64 bit pattern, for bit-exact comparisons."""
    return struct.unpack("<Q", struct.pack("<d", x))[0]


def all_values(fmt):
    """Every value of a finite format, negatives first, both zeros."""
    pos = fmt.finite_positive()
    return [-math.inf] + [-v for v in reversed(pos)] + [-0.0, 0.0] + pos + [math.inf]


def scan_down(fmt, exact):
    """Greatest format value <= exact (a Fraction), by linear scan."""
    if exact == math.inf:
        return math.inf
    best = -math.inf
    for v in fmt.finite_positive():
        if Fraction(v) <= exact:
            best = v
        if Fraction(-v) <= exact:
            best = max(best, -v)
    if exact >= 0:
        best = max(best, 0.0)
    return best


def scan_up(fmt, exact):
    """Least format value >= exact (a Fraction), by linear scan."""
    if exact == -math.inf:
        return -math.inf
    best = math.inf
    for v in fmt.finite_positive():
        if Fraction(v) >= exact:
            best = min(best, v)
        if Fraction(-v) >= exact:
            best = min(best, -v)
    if exact <= 0:
        best = min(best, 0.0)
    return best


def same_interval_bits(a, b):
    """Bitwise interval equality, distinguishing ±0 at either bound."""
    if a.is_empty and b.is_empty:
        return True
    return bits_of(a.lo) == bits_of(b.lo) and bits_of(a.hi) == bits_of(b.hi)


def subset(a, b):
    """a ⊆ b for normalized intervals (empty is a subset of anything)."""
    if a.is_empty:
        return True
    if b.is_empty:
        return False
    return b.lo <= a.lo and a.hi <= b.hi


def widen(rng, iv):
    """A random superset of iv (always nonempty, possibly unbounded)."""
    if iv.is_empty:
        return iv
    lo, hi = iv.lo, iv.hi
    if rng.random() < 0.5:
        if lo == -math.inf or rng.random() < 0.2:
            lo = -math.inf
        else:
            lo = min(lo, lo - abs(lo) * rng.random() - rng.random())
    if rng.random() < 0.5:
        if hi == math.inf or rng.random() < 0.2:
            hi = math.inf
        else:
            hi = max(hi, hi + abs(hi) * rng.random() + rng.random())
    return make_interval(lo, hi)
