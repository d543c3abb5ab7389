"""Shared fixtures and the per-criterion acceptance summary."""
from __future__ import annotations

from collections import OrderedDict
from pathlib import Path

import pytest

from semunits import fixtures as F

GOLDEN = Path(__file__).parent / "golden"

_results: "OrderedDict[int, dict]" = OrderedDict()


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


@pytest.fixture
def weight():
    return F.weight_fixture()


@pytest.fixture
def apples():
    return F.three_apples_fixture()


@pytest.fixture
def swans():
    return F.swan_fixture()


def pytest_runtest_logreport(report):
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    number, title = marks
    entry = _results.setdefault(number, {"title": title, "ok": True, "tests": 0})
    if report.when == "call" or report.outcome != "passed":
        if report.when == "call":
            entry["tests"] += 1
        if report.outcome != "passed":
            entry["ok"] = False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        r = _results[number]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:2d}: {r['title']} ({r['tests']} tests)")
