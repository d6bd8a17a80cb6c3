import time

import pytest

from ival.oracle import enumerate_intervals, tiny_format
from ival.sweep import run_sweep


@pytest.fixture(scope="session")
def tiny_fmt():
    return tiny_format()


@pytest.fixture(scope="session")
def tiny_intervals(tiny_fmt):
    return enumerate_intervals(tiny_fmt)


@pytest.fixture(scope="session")
def micro_fmt():
    # Smallest format that still has subnormals, normals and both signs;
    # 152 intervals, cheap enough for per-test exhaustive loops.
    return tiny_format(p=2, emin=-1, emax=1)


@pytest.fixture(scope="session")
def micro_intervals(micro_fmt):
    return enumerate_intervals(micro_fmt)


@pytest.fixture(scope="session")
def micro_sweep(micro_fmt):
    calls = []
    rep = run_sweep(fmt=micro_fmt, keep_matrices=True,
                    progress=lambda r: calls.append(r.op))
    rep.progress_calls = calls
    return rep


@pytest.fixture(scope="session")
def sweep_report(tiny_fmt):
    """The exhaustive default-format sweep, run once per session.

    Wall time is recorded because the acceptance suite has a budget for it;
    matrices are kept so the algebraic suites can reuse the results instead
    of recomputing 1.5M operation calls per identity.
    """
    t0 = time.perf_counter()
    report = run_sweep(fmt=tiny_fmt, keep_matrices=True, instrument=True)
    report.wall_seconds = time.perf_counter() - t0
    return report
