"""Figures rendered from sweep results.

Import cost and backend choice stay out of the library path: matplotlib
loads lazily and always through the Agg backend, since these run headless
next to the machine-readable report.
"""

import math
import os

from .sweep import CLS_NAMES, SweepReport


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def format_values_figure(fmt, path):
    """Number line of every finite value of the format, subnormals marked."""
    plt = _plt()
    pos = fmt.finite_positive()
    sub_top = math.ldexp(1.0, fmt.emin)  # smallest normal
    vals = [-v for v in reversed(pos)] + [0.0] + pos
    fig, ax = plt.subplots(figsize=(10, 2.2))
    ax.axhline(0, color="0.75", linewidth=1, zorder=1)
    normal = [v for v in vals if abs(v) >= sub_top or v == 0.0]
    subnormal = [v for v in vals if v != 0.0 and abs(v) < sub_top]
    ax.scatter(normal, [0] * len(normal), marker="|", s=220, color="tab:blue",
               label="normal and zero", zorder=2)
    ax.scatter(subnormal, [0] * len(subnormal), marker="|", s=220,
               color="tab:red", label="subnormal", zorder=2)
    ax.set_yticks([])
    ax.set_xlabel("value")
    ax.set_title(f"finite values, p={fmt.p} emin={fmt.emin} emax={fmt.emax}")
    ax.legend(loc="upper right", frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def sweep_summary_figure(report: SweepReport, path):
    """Pairs checked and mismatches per operation."""
    plt = _plt()
    ops = [o.op for o in report.ops]
    pairs = [o.pairs for o in report.ops]
    bad = [o.mismatches + o.sign_violations + o.count_violations
           for o in report.ops]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    x = range(len(ops))
    ax.bar(x, pairs, color="tab:blue", label="pairs checked")
    ax.bar(x, bad, color="tab:red", label="violations")
    for i, o in enumerate(report.ops):
        note = "ok" if o.passed else f"{bad[i]} bad"
        ax.annotate(f"{note}\n{o.elapsed:.1f}s", (i, pairs[i]),
                    ha="center", va="bottom", fontsize=8)
    ax.set_xticks(list(x), ops)
    ax.set_ylabel("ordered interval pairs")
    ax.set_ylim(0, max(pairs) * 1.25)
    ax.set_title("exhaustive sweep, all ordered pairs per operation")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def div_kinds_figure(report: SweepReport, path):
    """How division results split by divisor class: empty, single, split."""
    if report.div_class_kinds is None:
        raise ValueError("sweep did not run division")
    plt = _plt()
    # axis 0 is the dividend class; aggregate it away
    by_divisor = report.div_class_kinds.sum(axis=0)
    fig, ax = plt.subplots(figsize=(6.5, 3.4))
    x = range(len(CLS_NAMES))
    bottoms = [0] * len(CLS_NAMES)
    for kind, (label, color) in enumerate(
            [("empty", "0.6"), ("one part", "tab:blue"),
             ("two parts", "tab:orange")]):
        heights = [int(by_divisor[c][kind]) for c in x]
        ax.bar(x, heights, bottom=bottoms, color=color, label=label)
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_xticks(list(x), CLS_NAMES)
    ax.set_xlabel("divisor class")
    ax.set_ylabel("pairs")
    ax.set_title("division result shape by divisor class")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_figures(report: SweepReport, outdir) -> list:
    """Render the standard figure set into outdir; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    p = os.path.join(outdir, "format_values.png")
    format_values_figure(report.fmt, p)
    paths.append(p)
    p = os.path.join(outdir, "sweep_summary.png")
    sweep_summary_figure(report, p)
    paths.append(p)
    if report.div_class_kinds is not None:
        p = os.path.join(outdir, "div_kinds.png")
        div_kinds_figure(report, p)
        paths.append(p)
    return paths
