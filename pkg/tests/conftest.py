"""Collects one pass/fail line per acceptance criterion and prints them in the
terminal summary, where captured stdout would otherwise hide them."""

import functools

ACCEPTANCE_LINES = []


def record_acceptance(number: int, description: str):
    """Decorator: log 'criterion N: PASS/FAIL' for an acceptance test."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_LINES.append(f"criterion {number}: FAIL - {description}")
                raise
            ACCEPTANCE_LINES.append(f"criterion {number}: PASS - {description}")
            return result

        return wrapper

    return deco


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
