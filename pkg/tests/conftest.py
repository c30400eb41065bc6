import pytest

ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def record_acceptance():
    def record(name: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[name] = f"{'PASS' if passed else 'FAIL'} {name}" + (f" ({detail})" if detail else "")

    return record


def pytest_runtest_makereport(item, call):
    # a criterion whose test errored before recording still gets a FAIL line
    name = getattr(item.function, "acceptance", None)
    if name and call.when == "call" and call.excinfo is not None and name not in ACCEPTANCE:
        ACCEPTANCE[name] = f"FAIL {name} ({call.excinfo.typename})"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[name])
