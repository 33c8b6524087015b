import os

os.environ.setdefault("UPPERMCCOOL_CHECK_DIVISION", "1")

from uppermccool import modgb  # noqa: E402

# every normal_form call in the test run re-checks f == sum q_i g_i + r
modgb.CHECK_DIVISION = True

ACCEPTANCE_LINES = []


def _criterion_number(line):
    return int(line.split("criterion ", 1)[1].split(":", 1)[0])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=_criterion_number):
        terminalreporter.write_line(line)
