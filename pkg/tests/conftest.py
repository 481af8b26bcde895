import _acceptance_log


def pytest_terminal_summary(terminalreporter):
    if _acceptance_log.RECORDS:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_log.RECORDS:
            terminalreporter.line(line)
