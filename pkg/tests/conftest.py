"""Collects acceptance-test outcomes and prints one verdict line per criterion."""
from __future__ import annotations

import time
from collections import defaultdict

import pytest

CRITERIA = {
    "AC1": "block gales are supergales; capital is conserved inside blocks",
    "AC2": "i.o. gale growth at block boundaries",
    "AC3": "a.e. gale growth at every in-block step",
    "AC4": "scaled variants: validity and block-end value",
    "AC5": "lower-bound transform: supermartingale, identities, naturality, product bound",
    "AC6": "index-set counts and their bounds",
    "AC7": "circuit-size oracle correctness",
    "AC8": "rescaling, weighted sums, determinism",
}

_outcomes: dict[str, list[tuple[str, str, str]]] = defaultdict(list)
_durations: dict[str, float] = defaultdict(float)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    ac = marker.args[0]
    if rep.when in ("setup", "call"):
        _durations[ac] += rep.duration
    if hasattr(rep, "wasxfail"):
        _outcomes[ac].append((item.name, "xfail", str(rep.wasxfail)))
    elif rep.failed:
        _outcomes[ac].append((item.name, "failed", rep.when))
    elif rep.when == "call":
        _outcomes[ac].append((item.name, rep.outcome, ""))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for ac in sorted(_outcomes):
        rows = _outcomes[ac]
        failed = [name for name, status, _ in rows if status == "failed"]
        refuted = [(name, why) for name, status, why in rows if status == "xfail"]
        passed = sum(1 for _, status, _ in rows if status == "passed")
        verdict = "FAIL" if failed or refuted else "PASS"
        tr.write_line(f"{ac} {verdict}  {CRITERIA.get(ac, '')}  "
                      f"[{passed}/{len(rows)} checks, {_durations[ac]:.1f}s]")
        for name in failed:
            tr.write_line(f"    failed: {name}")
        for name, why in refuted:
            tr.write_line(f"    stated clause does not hold: {name}: {why}")


@pytest.fixture(scope="session")
def arity4_oracle():
    """Circuit-size oracle with every table up to arity 4 built (timed)."""
    from galelab.oracle import CircuitSizeOracle

    oracle = CircuitSizeOracle()
    t0 = time.perf_counter()
    for k in range(5):
        oracle.build(k)
    oracle.build_seconds = time.perf_counter() - t0
    return oracle
