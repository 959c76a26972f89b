import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_CRITERIA = {}  # number -> [title, passed so far, tests seen]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


def pytest_collection_finish(session):
    for item in session.items:
        mark = item.get_closest_marker("criterion")
        if mark:
            n, title = mark.args
            _CRITERIA.setdefault(n, [title, True, 0])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if not mark:
        return
    entry = _CRITERIA[mark.args[0]]
    if rep.when == "call" or rep.failed:
        entry[2] += rep.when == "call"
        if rep.failed or rep.skipped:
            entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok, seen = _CRITERIA[n]
        status = "NOT RUN" if not seen and ok else "PASS" if ok else "FAIL"
        tr.write_line(f"[{status}] criterion {n}: {title} ({seen} test(s))")
