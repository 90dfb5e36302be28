"""Shared pytest hooks for both test trees."""

import re
import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo acceptance lines collected by test modules.

    Acceptance tests append their PASS/FAIL lines to a module-level
    ``ACCEPTANCE_REPORT`` list; printing them here keeps them visible
    even when pytest captures test output.
    """
    lines = []
    for module in list(sys.modules.values()):
        lines.extend(getattr(module, "ACCEPTANCE_REPORT", ()))
    if not lines:
        return

    def key(line):
        match = re.match(r"\[criterion (\d+)\]", line)
        return int(match.group(1)) if match else 0

    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=key):
        terminalreporter.write_line(line)
