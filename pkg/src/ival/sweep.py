"""Exhaustive verification sweeps: every interval pair against the oracle.

A sweep enumerates all ordered pairs of intervals of a format (Empty
included), runs each operation, and compares bit layout against the
rounded oracle set.  Rows are processed with numpy so the comparison and
bookkeeping stay cheap next to the per-pair arithmetic.

The multiplication pass also counts kernel invocations per pair through
the kernel hook, checking the dispatch really performs two rounded
multiplies per pair, four when both operands straddle zero and none when
one is the zero interval or Empty.
"""

import math
import time

import numpy as np

from .core import EMPTY, Interval, IntervalClass, classify, format_interval
from .fpkernel import kernel_hook
from .oracle import _tables, enumerate_intervals, expected_bounds, expected_div, tiny_format
from .ops import add, div, format_div_result, hull_result, mul, sub

_INF = math.inf

OPS = ("add", "sub", "mul", "div")

# Stable small codes for class-pair statistics; -1 is Empty.
_CLS_CODE = {
    IntervalClass.M: 0,
    IntervalClass.Z: 1,
    IntervalClass.P0: 2,
    IntervalClass.P1: 3,
    IntervalClass.N0: 4,
    IntervalClass.N1: 5,
}
CLS_NAMES = ("M", "Z", "P0", "P1", "N0", "N1")


class OpReport:
    """Outcome of one operation's sweep."""

    __slots__ = ("op", "pairs", "mismatches", "sign_violations",
                 "count_violations", "kind_counts", "elapsed",
                 "first_counterexample")

    def __init__(self, op):
        self.op = op
        self.pairs = 0
        self.mismatches = 0
        self.sign_violations = 0
        self.count_violations = 0
        self.kind_counts = None
        self.elapsed = 0.0
        self.first_counterexample = None

    @property
    def passed(self):
        return not (self.mismatches or self.sign_violations or self.count_violations)

    def record(self):
        out = {
            "record": "op",
            "op": self.op,
            "pairs": self.pairs,
            "mismatches": self.mismatches,
            "zero_sign_violations": self.sign_violations,
            "elapsed_s": round(self.elapsed, 3),
        }
        if self.op == "mul":
            out["mult_count_violations"] = self.count_violations
        if self.kind_counts is not None:
            out["result_kinds"] = {"empty": self.kind_counts[0],
                                   "single": self.kind_counts[1],
                                   "split": self.kind_counts[2]}
        out["first_counterexample"] = self.first_counterexample
        return out


class SweepReport:
    """Everything one sweep established, plus optional raw matrices."""

    def __init__(self, fmt, intervals, ops):
        self.fmt = fmt
        self.intervals = intervals
        self.ops = ops
        self.matrices = {}
        self.cls_codes = None
        self.div_class_kinds = None

    @property
    def passed(self):
        return all(o.passed for o in self.ops)

    def op_report(self, name):
        for o in self.ops:
            if o.op == name:
                return o
        raise KeyError(name)

    def records(self):
        """JSON-ready dicts, one per line of a report file."""
        f = self.fmt
        yield {
            "record": "format",
            "p": f.p,
            "emin": f.emin,
            "emax": f.emax,
            "finite_values": 2 * len(f.finite_positive()) + 2,
            "intervals": len(self.intervals),
            "pairs_per_op": len(self.intervals) ** 2,
        }
        for o in self.ops:
            yield o.record()
        yield {"record": "summary", "passed": self.passed}


def _hexpair(iv):
    if iv.is_empty:
        return "Empty"
    return [iv.lo.hex(), iv.hi.hex()]


def _counterexample(op, x, y, got, want):
    return {
        "op": op,
        "x": _hexpair(x),
        "y": _hexpair(y),
        "x_str": format_interval(x),
        "y_str": format_interval(y),
        "got": got,
        "expected": want,
    }


def _check_zero_signs(rep, lo_arr, hi_arr):
    """Normalized layout: a zero lower bound is +0, a zero upper is -0."""
    z = lo_arr == 0.0
    if z.any() and np.signbit(lo_arr[z]).any():
        rep.sign_violations += int(np.signbit(lo_arr[z]).sum())
    z = hi_arr == 0.0
    if z.any() and (~np.signbit(hi_arr[z])).any():
        rep.sign_violations += int((~np.signbit(hi_arr[z])).sum())


def _sweep_pointwise(op, fn, ivs, fmt, rep, keep, out):
    n = len(ivs)
    rows_il, rows_ih = ([] if keep else None), ([] if keep else None)
    for i, x in enumerate(ivs):
        il_row = []
        ih_row = []
        el_row = []
        eh_row = []
        xe = x.is_empty
        for y in ivs:
            r = fn(x, y, fmt)
            il_row.append(r.lo)
            ih_row.append(r.hi)
            if xe or y.is_empty:
                el_row.append(_INF)
                eh_row.append(-_INF)
            else:
                lo, hi = expected_bounds(op, x, y, fmt)
                el_row.append(lo)
                eh_row.append(hi)
        il = np.array(il_row)
        ih = np.array(ih_row)
        bad = (il != np.array(el_row)) | (ih != np.array(eh_row))
        rep.pairs += n
        if bad.any():
            rep.mismatches += int(bad.sum())
            if rep.first_counterexample is None:
                j = int(np.argmax(bad))
                r = fn(x, ivs[j], fmt)
                want = expected_bounds(op, x, ivs[j], fmt)
                rep.first_counterexample = _counterexample(
                    op, x, ivs[j], _hexpair(r),
                    [want[0].hex(), want[1].hex()])
        _check_zero_signs(rep, il, ih)
        if keep:
            rows_il.append(il)
            rows_ih.append(ih)
    if keep:
        out[f"{op}_lo"] = np.vstack(rows_il)
        out[f"{op}_hi"] = np.vstack(rows_ih)


def _expected_mults(cx, cy):
    if cx < 0 or cy < 0 or cx == 1 or cy == 1:
        return 0
    if cx == 0 and cy == 0:
        return 4
    return 2


def _sweep_mul(ivs, fmt, rep, keep, out, codes, instrument):
    if not instrument:
        _sweep_pointwise("mul", mul, ivs, fmt, rep, keep, out)
        return
    n = len(ivs)
    rows_il, rows_ih = ([] if keep else None), ([] if keep else None)
    calls = [0]

    def count(op, a, b, direction):
        if op == "mul":
            calls[0] += 1

    # Expected kernel-call counts depend only on the class pair; one vector
    # per left-hand class covers every row with that class.
    want_by_cx = {cx: np.fromiter((_expected_mults(cx, c) for c in codes),
                                  dtype=np.int64, count=n)
                  for cx in (-1, 0, 1, 2, 3, 4, 5)}

    with kernel_hook(count):
        for i, x in enumerate(ivs):
            cx = codes[i]
            il_row = []
            ih_row = []
            el_row = []
            eh_row = []
            counts_row = []
            xe = x.is_empty
            for j, y in enumerate(ivs):
                before = calls[0]
                r = mul(x, y, fmt)
                counts_row.append(calls[0] - before)
                il_row.append(r.lo)
                ih_row.append(r.hi)
                if xe or y.is_empty:
                    el_row.append(_INF)
                    eh_row.append(-_INF)
                else:
                    lo, hi = expected_bounds("mul", x, y, fmt)
                    el_row.append(lo)
                    eh_row.append(hi)
            il = np.array(il_row)
            ih = np.array(ih_row)
            bad = (il != np.array(el_row)) | (ih != np.array(eh_row))
            want_counts = want_by_cx[int(cx)]
            badc = np.array(counts_row) != want_counts
            rep.pairs += n
            if bad.any():
                rep.mismatches += int(bad.sum())
                if rep.first_counterexample is None:
                    j = int(np.argmax(bad))
                    r = mul(x, ivs[j], fmt)
                    want = expected_bounds("mul", x, ivs[j], fmt)
                    rep.first_counterexample = _counterexample(
                        "mul", x, ivs[j], _hexpair(r),
                        [want[0].hex(), want[1].hex()])
            if badc.any():
                rep.count_violations += int(badc.sum())
                if rep.first_counterexample is None:
                    j = int(np.argmax(badc))
                    rep.first_counterexample = _counterexample(
                        "mul-count", x, ivs[j],
                        int(np.array(counts_row)[j]), int(want_counts[j]))
            _check_zero_signs(rep, il, ih)
            if keep:
                rows_il.append(il)
                rows_ih.append(ih)
    if keep:
        out["mul_lo"] = np.vstack(rows_il)
        out["mul_hi"] = np.vstack(rows_ih)


_DIV_SENTINEL = (_INF, -_INF)


def _sweep_div(ivs, fmt, rep, keep, out, codes, class_kinds):
    n = len(ivs)
    names = ("div_kind", "div_lo1", "div_hi1", "div_lo2", "div_hi2")
    rows = {k: [] for k in names} if keep else None
    kind_totals = np.zeros(3, dtype=np.int64)
    nonempty = codes >= 0
    key_base = codes[nonempty].astype(np.int64) * 3
    for i, x in enumerate(ivs):
        ik_row = []
        bounds = ([], [], [], [])
        ek_row = []
        ebounds = ([], [], [], [])
        xe = x.is_empty
        for y in ivs:
            r = div(x, y, fmt)
            parts = r.parts
            k = len(parts)
            ik_row.append(k)
            p1 = parts[0] if k else None
            bounds[0].append(p1.lo if k else _INF)
            bounds[1].append(p1.hi if k else -_INF)
            bounds[2].append(parts[1].lo if k == 2 else _INF)
            bounds[3].append(parts[1].hi if k == 2 else -_INF)
            if xe or y.is_empty:
                comps = []
            else:
                comps = expected_div(x, y, fmt)
            ek_row.append(len(comps))
            e1 = comps[0] if comps else _DIV_SENTINEL
            e2 = comps[1] if len(comps) == 2 else _DIV_SENTINEL
            ebounds[0].append(e1[0])
            ebounds[1].append(e1[1])
            ebounds[2].append(e2[0])
            ebounds[3].append(e2[1])
        ik = np.array(ik_row, dtype=np.int8)
        barr = [np.array(b) for b in bounds]
        bad = ik != np.array(ek_row, dtype=np.int8)
        for got, want in zip(barr, ebounds):
            bad |= got != np.array(want)
        rep.pairs += n
        kind_totals += np.bincount(ik, minlength=3)
        if class_kinds is not None and codes[i] >= 0:
            key = key_base + ik[nonempty]
            class_kinds[codes[i]] += np.bincount(key, minlength=18).reshape(6, 3)
        if bad.any():
            rep.mismatches += int(bad.sum())
            if rep.first_counterexample is None:
                j = int(np.argmax(bad))
                r = div(x, ivs[j], fmt)
                comps = ([] if (xe or ivs[j].is_empty)
                         else expected_div(x, ivs[j], fmt))
                rep.first_counterexample = _counterexample(
                    "div", x, ivs[j], format_div_result(r, hexmode=True),
                    [[c[0].hex(), c[1].hex()] for c in comps])
        _check_zero_signs(rep, barr[0], barr[1])
        _check_zero_signs(rep, barr[2], barr[3])
        if keep:
            rows["div_kind"].append(ik)
            for nm, arr in zip(names[1:], barr):
                rows[nm].append(arr)
    rep.kind_counts = [int(v) for v in kind_totals]
    if keep:
        for nm in names:
            out[nm] = np.vstack(rows[nm])


def run_sweep(fmt=None, ops=OPS, keep_matrices=False, instrument=True,
              progress=None):
    """Check every ordered interval pair of fmt on the given operations.

    Returns a SweepReport; with keep_matrices the implementation results
    are retained as n-by-n float matrices for algebraic post-checks.
    The default format is the miniature one.
    """
    fmt = fmt or tiny_format()
    _tables(fmt)
    ivs = enumerate_intervals(fmt)
    codes = np.fromiter(
        (-1 if v.is_empty else _CLS_CODE[classify(v)] for v in ivs),
        dtype=np.int8, count=len(ivs))
    reports = []
    result = SweepReport(fmt, ivs, reports)
    result.cls_codes = codes
    for op in ops:
        rep = OpReport(op)
        t0 = time.perf_counter()
        if op == "div":
            result.div_class_kinds = np.zeros((6, 6, 3), dtype=np.int64)
            _sweep_div(ivs, fmt, rep, keep_matrices, result.matrices,
                       codes, result.div_class_kinds)
        elif op == "mul":
            _sweep_mul(ivs, fmt, rep, keep_matrices, result.matrices,
                       codes, instrument)
        elif op == "add":
            _sweep_pointwise("add", add, ivs, fmt, rep, keep_matrices,
                             result.matrices)
        elif op == "sub":
            _sweep_pointwise("sub", sub, ivs, fmt, rep, keep_matrices,
                             result.matrices)
        else:
            raise ValueError(f"unknown op {op!r}")
        rep.elapsed = time.perf_counter() - t0
        reports.append(rep)
        if progress is not None:
            progress(rep)
    return result
