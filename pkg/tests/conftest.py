import sys

import pytest

from radialiso.params import Weights


@pytest.fixture
def origin_weights():
    return Weights(0.0, 0.0)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
