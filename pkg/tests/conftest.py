import acceptance_log


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.RESULTS[k][1])
