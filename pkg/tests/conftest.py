import re

import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)_", item.name)
    if not m:
        return
    num = int(m.group(1))
    label = (item.function.__doc__ or item.name).strip().splitlines()[0]
    if report.failed:
        _criteria[num] = ("FAIL", label)
    elif report.when == "call" and num not in _criteria:
        _criteria[num] = ("PASS", label)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        verdict, label = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {label}")
