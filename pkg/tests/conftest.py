import sys


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, when that module ran
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
