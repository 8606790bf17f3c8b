"""Prints one PASS/FAIL line per acceptance criterion after the run."""

_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1][len("test_"):]
        detail = dict(report.user_properties).get("detail", "")
        _criteria[name] = ("PASS" if report.outcome == "passed" else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(_criteria, key=lambda s: (int(s.split("_")[1].rstrip("abc")), s)):
        status, detail = _criteria[name]
        terminalreporter.write_line(f"{status}  {name}  {detail}")
