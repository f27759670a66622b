from __future__ import annotations

import re

_CRITERIA: dict[int, tuple[str, list[str]]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+?)(\[|$)", report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    num = int(m.group(1))
    name, outcomes = _CRITERIA.setdefault(num, (m.group(2).replace("_", " "), []))
    outcomes.append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        name, outcomes = _CRITERIA[num]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {name}")
