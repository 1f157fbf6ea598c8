import pytest

ACCEPTANCE_LINES = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_log(request):
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, {})

    def log(number, line):
        lines[number] = line
        print(line)

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
