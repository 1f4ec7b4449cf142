import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from circular.lazy_core import reset_stats  # noqa: E402

_criteria: list[tuple[int, str, str]] = []


@pytest.fixture(autouse=True)
def _fresh_counters():
    reset_stats()
    yield


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _criteria.append((number, title, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, verdict in sorted(_criteria):
        terminalreporter.write_line(f"{verdict}  criterion {number:>2}: {title}")
