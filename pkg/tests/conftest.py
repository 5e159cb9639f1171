import pytest

_KEY = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record one acceptance verdict; the terminal summary prints them all."""
    results = request.config.stash.setdefault(_KEY, {})

    def record(number, title, ok, detail=""):
        results[number] = (title, bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok, detail = results[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
