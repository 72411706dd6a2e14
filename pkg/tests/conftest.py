from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"
QUIJOTE = DATA / "quijote_i_1-3.txt"

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.fixture(scope="session")
def quijote_path():
    return QUIJOTE


_RANK = {"PASS": 0, "SKIP": 1, "FAIL": 2}


def pytest_runtest_logreport(report):
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    if report.failed:
        status = "FAIL"
    elif report.skipped:
        status = "SKIP"
    elif report.when == "call":
        status = "PASS"
    else:
        return
    n, title = marker
    prev = _criteria.get(n, ("PASS", title))[0]
    _criteria[n] = (max(prev, status, key=_RANK.get), title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, title = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
