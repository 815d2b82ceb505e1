import pytest

_results: dict[int, tuple[str, list[str]]] = {}


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    title, outcomes = _results.setdefault(number, (report.criterion_title, []))
    if report.when == "call" or report.failed or report.skipped:
        outcomes.append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        report.criterion, report.criterion_title = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, outcomes = _results[number]
        if outcomes and all(o == "passed" for o in outcomes):
            verdict = "PASS"
        elif "failed" in outcomes:
            verdict = "FAIL"
        else:
            verdict = "SKIP"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
