import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def acceptance_log(request):
    log = request.config.__dict__.setdefault("_acceptance_lines", {})
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.__dict__.get("_acceptance_lines")
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(log):
        terminalreporter.write_line(log[key])
