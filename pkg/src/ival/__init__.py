"""Closed interval arithmetic over IEEE floats that never traps.

Every operation, division by intervals containing zero included, returns
an interval (or an explicit Empty, or a two-part division result); no
input reachable through this API produces a NaN bound or an exception.
Results are the tightest representable enclosures of the exact solution
sets, which the verification sweep in ival.sweep checks exhaustively on
miniature formats.
"""

from .core import (
    EMPTY,
    ZERO,
    Interval,
    IntervalClass,
    classify,
    format_interval,
    hull,
    intersect,
    make_interval,
    member,
    phi_point,
)
from .fpkernel import (
    BINARY64,
    DOWN,
    UP,
    FloatFormat,
    add_dir,
    div_dir,
    mul_dir,
    round_real_down,
    round_real_up,
    sub_dir,
)
from .ops import (
    DivResult,
    add,
    div,
    div_hull,
    format_div_result,
    hull_result,
    mul,
    negate,
    sub,
)

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "ZERO",
    "Interval",
    "IntervalClass",
    "classify",
    "format_interval",
    "hull",
    "intersect",
    "make_interval",
    "member",
    "phi_point",
    "BINARY64",
    "DOWN",
    "UP",
    "FloatFormat",
    "add_dir",
    "sub_dir",
    "mul_dir",
    "div_dir",
    "round_real_down",
    "round_real_up",
    "DivResult",
    "add",
    "sub",
    "negate",
    "mul",
    "div",
    "div_hull",
    "hull_result",
    "format_div_result",
    "__version__",
]
