import pytest

from lvcodes.lvcode import derive_params


@pytest.fixture(scope="session")
def worked():
    """The N=4, u1=50, v=2, R=1/10 instance used throughout the docs."""
    return derive_params(4, 50, 2, "1/10")


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, ok, detail)``; also asserts ``ok``."""
    def record(n, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {detail}"
        request.config.acceptance_lines.append((n, line))
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = sorted(getattr(config, "acceptance_lines", []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)
