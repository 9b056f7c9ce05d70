import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.LINES:
        terminalreporter.write_line(line)
