"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import time

import pytest

_RESULTS: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    t0 = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - t0))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    key, title = mark.args
    elapsed = dict(item.user_properties).get("elapsed", 0.0)
    # a strict xfail that fails as expected is still a failed criterion
    passed = rep.passed and not hasattr(rep, "wasxfail")
    _RESULTS[key] = {"title": title, "passed": passed, "elapsed": elapsed}


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=lambda k: (int(k.rstrip("L")), k)):
        r = _RESULTS[key]
        status = "PASS" if r["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {key:<4} {status}  {r['elapsed']:7.3f} s  {r['title']}")
