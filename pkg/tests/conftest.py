import pytest

from jordantype.partitions import all_partitions, parse_partition


def P(text):
    return parse_partition(text)


@pytest.fixture(scope="session")
def up_to_8():
    return list(all_partitions(8))


@pytest.fixture(scope="session")
def up_to_10():
    return list(all_partitions(10))


_criteria: list[tuple[str, str, float]] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _criteria.append((props["criterion"], report.outcome, props.get("elapsed", report.duration)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, duration in _criteria:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {label} ({duration:.2f}s)")
