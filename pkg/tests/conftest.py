import random

import pytest

from opw.field import TOY_MODULUS, Modulus
from opw.hashchain import SchemeParams

Q7 = Modulus(7)
Q13 = Modulus(13)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def toy_params():
    return SchemeParams(4, "sha256", TOY_MODULUS)


_criteria: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria.setdefault(number, (title, []))[1].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, results = _criteria[number]
        status = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
