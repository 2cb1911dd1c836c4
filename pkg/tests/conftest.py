import pytest

from planet.fixture import load_fixture

_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def fixture_data():
    return load_fixture()


@pytest.fixture(scope="session")
def families(fixture_data):
    return {ds.name: ds for ds in fixture_data[1]}


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on its own."""

    def record(label: str, ok: bool | None, detail: str = "") -> bool | None:
        """``ok=None`` marks a criterion that could not run."""
        print(_line(label, ok, detail))
        _criteria.append((label, ok, detail))
        return ok

    return record


def _line(label, ok, detail):
    status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
    return f"[{status}] {label}" + (f" -- {detail}" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(_criteria):
        terminalreporter.write_line(_line(label, ok, detail))
