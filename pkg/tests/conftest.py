import pytest

CRITERIA = {
    1: "template certification",
    2: "template clique counts",
    3: "product counting identity",
    4: "product regularity",
    5: "end-to-end hardness decisions",
    6: "constancy invariants",
    7: "k-partite optimality",
    8: "polynomial layer",
    9: "solver oracle equivalence",
    10: "min/max duality",
    11: "induced 4-cycle reduction",
    12: "composition identities",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or rep.failed:
        ok = rep.passed and not rep.skipped
        _outcomes[n] = _outcomes.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        if n in _outcomes:
            status = "PASS" if _outcomes[n] else "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"criterion {n:2d} [{status}] {title}")
