"""Collects acceptance-criterion outcomes and prints one line per criterion."""
import pytest

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed
    skipped = report.skipped and report.when == "setup"
    previous = _results.get(number, (title, "PASS"))[1]
    if failed:
        status = "FAIL"
    elif skipped:
        status = "SKIP" if previous != "FAIL" else previous
    else:
        status = previous
    if report.when == "call" or failed or skipped:
        _results[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, status = _results[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}: {title}")
