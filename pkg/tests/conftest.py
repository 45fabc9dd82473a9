import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def record(request):
    """Log one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config._acceptance_lines

    def _record(number, name, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {name} ({detail})"
        lines.append(line)
        print(line)
        assert ok, line

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
