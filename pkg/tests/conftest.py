import re
from collections import defaultdict

_results: dict[int, list[bool]] = defaultdict(list)


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_c(\d\d)_", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[int(m.group(1))].append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    try:
        from test_acceptance import CRITERIA
    except ImportError:
        CRITERIA = {}
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        status = "PASS" if all(_results[num]) else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {status}  {CRITERIA.get(num, '')}")
