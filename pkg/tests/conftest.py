import pytest

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def record(request):
    """Log one acceptance line: ``record(label, passed, detail)``."""
    log = request.config.stash[_ACCEPTANCE]

    def _record(label, passed, detail=""):
        log.append((label, bool(passed), detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash[_ACCEPTANCE]
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in log:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
