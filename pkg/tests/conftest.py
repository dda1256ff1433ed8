import os
import re
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_details: dict[str, str] = {}
_outcomes: dict[str, str] = {}


@pytest.fixture
def record(request):
    """Attach a one-line summary to the running acceptance criterion."""

    def note(text: str) -> None:
        _details[request.node.nodeid] = text
        print(text)

    return note


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and (report.when == "call" or report.failed):
        if _outcomes.get(report.nodeid) != "FAIL":
            _outcomes[report.nodeid] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_outcomes, key=lambda s: int(re.search(r"criterion_(\d+)", s).group(1))):
        n = int(re.search(r"criterion_(\d+)", nodeid).group(1))
        terminalreporter.write_line(f"criterion {n}: {_outcomes[nodeid]}  {_details.get(nodeid, '')}".rstrip())
