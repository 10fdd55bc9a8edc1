import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from kloosterkit.gf2n import FieldCtx  # noqa: E402


@pytest.fixture(scope="session")
def gf8():
    return FieldCtx(3, 0b1011)


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = FieldCtx(n)
        return cache[n]

    return get


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per numbered criterion

_CRITERIA: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num): acceptance criterion this test belongs to")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    num = report.user_properties and dict(report.user_properties).get("criterion")
    if num:
        _CRITERIA.setdefault(num, []).append(report.passed)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker and ("criterion", marker.args[0]) not in item.user_properties:
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        results = _CRITERIA[num]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status} ({sum(results)}/{len(results)} checks)")
