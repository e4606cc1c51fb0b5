import pytest

_criterion_lines: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance-criterion verdict and assert it.

    The collected lines are replayed in the terminal summary so the full
    pass/fail list survives output capture.
    """

    def record(num: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
        _criterion_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
