from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from qss.cli import parse_code_file
from qss.css import build_scheme
from qss.gf import make_field

FIXTURES = Path(__file__).parent / "fixtures"

EX11_E = (0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1)

# minimal authorized sets exactly as printed for the [[11,1,3]] example
EX11_GAMMA = [
    {3, 10, 11}, {6, 9, 11}, {4, 7, 11}, {2, 5, 11},
    {1, 8, 11}, {2, 3, 4, 6, 8},
    {4, 5, 6, 8, 10}, {1, 3, 4, 5, 6}, {1, 2, 4, 6, 10},
    {3, 4, 5, 8, 9}, {2, 4, 8, 9, 10}, {1, 2, 3, 4, 9},
    {1, 4, 5, 9, 10}, {3, 5, 6, 7, 8}, {2, 6, 7, 8, 10},
    {1, 2, 3, 6, 7}, {1, 5, 6, 7, 10}, {5, 7, 8, 9, 10},
    {2, 3, 7, 8, 9}, {1, 3, 5, 7, 9}, {1, 2, 7, 9, 10},
]

EX11_H = np.array([
    [1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
    [0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1, 0, 1, 1],
])

FANO_LINES = [{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}]


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def ex11_code():
    return parse_code_file(FIXTURES / "ex11.code")


@pytest.fixture(scope="session")
def ex11_scheme(ex11_code):
    return build_scheme(ex11_code, g=EX11_E)


@pytest.fixture(scope="session")
def steane_scheme():
    return build_scheme(parse_code_file(FIXTURES / "steane.code"))


@pytest.fixture(scope="session")
def zerosum_scheme():
    return build_scheme(parse_code_file(FIXTURES / "zerosum3.code"))


@pytest.fixture(scope="session")
def degenerate_scheme():
    return build_scheme(parse_code_file(FIXTURES / "degenerate3.code"))


@pytest.fixture(scope="session")
def corpus(degenerate_scheme, steane_scheme, zerosum_scheme):
    return {"degenerate3": degenerate_scheme, "steane": steane_scheme, "zerosum3": zerosum_scheme}


_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, text = marker
    _, outcomes = _criteria.setdefault(number, (text, []))
    outcomes.append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, outcomes = _criteria[number]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number}: {text}")
