import pytest

ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, ok, detail)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        line = "[%s] criterion %d: %s" % ("PASS" if ok else "FAIL", number, title)
        if detail:
            line += " -- " + detail
        terminalreporter.write_line(line)
