import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one acceptance line; the summary prints them all at the end."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(criterion, ok, detail, elapsed, limit):
        status = "PASS" if ok and elapsed <= limit else "FAIL"
        lines.append(f"[{status}] criterion {criterion}: {detail} ({elapsed:.3f}s, limit {limit:g}s)")
        return status == "PASS"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
