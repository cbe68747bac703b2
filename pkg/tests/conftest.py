"""Shared pytest plumbing for the suite.

The acceptance tests record one verdict line per criterion; this plugin
re-prints them in the terminal summary so the pass/fail lines stay visible
even when stdout capture is active.
"""

ACCEPTANCE_LINES: list[str] = []


def record_criterion(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
