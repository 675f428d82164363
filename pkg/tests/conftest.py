import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_collection_modifyitems(config, items):
    if os.environ.get("RMCOUNT_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long run; set RMCOUNT_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report(capsys):
    """Record one PASS/FAIL line for an acceptance criterion.

    Use as ``with report(5, "table I bands") as detail: ...``; append strings to
    ``detail`` for the summary.  The line is printed immediately and again in
    the terminal summary.
    """
    import contextlib

    @contextlib.contextmanager
    def _report(number, title):
        detail: list[str] = []
        status = "FAIL"
        try:
            yield detail
            status = "PASS"
        finally:
            line = f"[{status}] criterion {number:>2}: {title}" + (f" | {'; '.join(detail)}" if detail else "")
            ACCEPTANCE_LINES.append(line)
            with capsys.disabled():
                print("\n" + line, flush=True)

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
