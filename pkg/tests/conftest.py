import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """``criterion(label, passed, detail)`` prints one PASS/FAIL line and asserts."""
    lines = request.config.stash[_LINES]
    seen = []

    def record(label, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'}  {label}: {detail}"
        print(line)
        lines.append(line)
        seen.append(label)
        assert passed, line

    yield record
    if not seen:
        lines.append(f"FAIL  {request.node.name}: raised before reporting")


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
