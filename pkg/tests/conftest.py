import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gsn_impact import parse_argument, parse_registry, parse_scenario  # noqa: E402
from helpers import FIXTURES  # noqa: E402

_acceptance: dict[str, str] = {}


@pytest.fixture
def fles_graph():
    return parse_argument((FIXTURES / "fles.gsn.yaml").read_text())


@pytest.fixture
def fles_registry():
    return parse_registry((FIXTURES / "fles.reg.yaml").read_text())


@pytest.fixture
def fles_scenario():
    return parse_scenario((FIXTURES / "fles.chg.yaml").read_text())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        verdict = "PASS" if report.passed else "FAIL"
        if _acceptance.get(label) != "FAIL":
            _acceptance[label] = verdict


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test checks")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(re.search(r"\d+", s).group())):
        terminalreporter.write_line(f"{_acceptance[label]}  {label}")
