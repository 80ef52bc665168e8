from collections import defaultdict

import pytest

_results = defaultdict(list)
_titles = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    _titles[number] = title
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results[number].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        runs = _results[number]
        failed = [name for name, ok in runs if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number}: {status}  {_titles[number]} ({len(runs) - len(failed)}/{len(runs)} checks)"
        if failed:
            line += "  failed: " + ", ".join(failed)
        terminalreporter.write_line(line)
