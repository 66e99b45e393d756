import os
import re
import time

import pytest
from hypothesis import settings

from rba6 import sieve

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_DETAILS = {}
TIMINGS = {}
_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def jobs():
    return int(os.environ.get("RBA6_JOBS", "1") or 1)


@pytest.fixture(scope="session")
def census150():
    """Full census up to order 150, computed once per session (a few minutes on one core)."""
    t = time.perf_counter()
    records = sieve.enumerate_census(150, jobs=jobs())
    TIMINGS["census150"] = time.perf_counter() - t
    return records


@pytest.fixture
def note():
    """Record a one-line summary for the acceptance report."""

    def add(number, text):
        _DETAILS.setdefault(number, []).append(text)
        print(f"criterion {number}: {text}")

    return add


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = _CRITERION.search(rep.nodeid)
            if m and rep.when == "call" or (m and key == "error"):
                outcomes[int(m.group(1))] = "PASS" if key == "passed" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(outcomes):
        detail = " | ".join(_DETAILS.get(number, []))
        terminalreporter.write_line(f"criterion {number:>2}: {outcomes[number]}  {detail}")
