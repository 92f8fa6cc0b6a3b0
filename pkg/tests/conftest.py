from contextlib import contextmanager

import pytest

CRITERIA = {}


class _Line:
    detail = ""


@pytest.fixture(scope="session")
def criterion():
    """``with criterion(n, title) as line:`` records PASS/FAIL for acceptance criterion n."""

    @contextmanager
    def record(n, title):
        line = _Line()
        try:
            yield line
        except BaseException as exc:
            msg = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
            CRITERIA[n] = f"criterion {n} FAIL  {title}: {msg}"
            print(CRITERIA[n])
            raise
        CRITERIA[n] = f"criterion {n} PASS  {title}" + (f": {line.detail}" if line.detail else "")
        print(CRITERIA[n])

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
