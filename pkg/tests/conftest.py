"""Shared fixtures and the per-criterion acceptance summary."""

from collections import defaultdict

import pytest

from treewalk.graph import gamma8
from treewalk.io import load_fixture

_outcomes: dict[int, list[tuple[str, str]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[int(mark.args[0])].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        runs = _outcomes[n]
        failed = [name for name, o in runs if o != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(runs) - len(failed)}/{len(runs)} sub-tests passed"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        tr.write_line(f"criterion {n:>2}: {status}  ({detail})")


@pytest.fixture(scope="session")
def g8():
    return gamma8()


@pytest.fixture(scope="session")
def fixture_graph():
    return load_fixture
