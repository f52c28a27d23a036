"""Collects acceptance-criterion outcomes and prints one PASS/FAIL line each."""

import pytest

_CRITERIA: dict[str, tuple[int, str]] = {}
_RESULTS: dict[int, tuple[str, str, float | None]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            _CRITERIA[item.nodeid] = marker.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    if report.when != "call" and report.passed:
        return
    number, title = _CRITERIA[report.nodeid]
    status = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
    elapsed = dict(report.user_properties).get("elapsed")
    if _RESULTS.get(number, ("PASS",))[0] == "PASS":
        _RESULTS[number] = (status, title, elapsed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title, elapsed = _RESULTS[number]
        timing = f" ({elapsed:.2f}s)" if elapsed is not None else ""
        terminalreporter.write_line(f"criterion {number}: {status}  {title}{timing}")


@pytest.fixture
def budget(record_property):
    """Context manager factory: run a block, record its wall time, enforce a limit."""
    import time
    from contextlib import contextmanager

    @contextmanager
    def _budget(seconds: float):
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        record_property("elapsed", elapsed)
        assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"

    return _budget
