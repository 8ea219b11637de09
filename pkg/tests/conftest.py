import pytest

from ribbon_moduli.ribbon import build_graph

_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def theta():
    return build_graph([(1, 2, 3), (6, 5, 4)], [(1, 4), (2, 5), (3, 6)])


@pytest.fixture
def twisted_theta():
    return build_graph([(1, 2, 3), (4, 5, 6)], [(1, 4), (2, 5), (3, 6)])


@pytest.fixture
def figure_eight():
    return build_graph([(1, 2, 3, 4)], [(1, 2), (3, 4)])


@pytest.fixture
def twisted_figure_eight():
    return build_graph([(1, 2, 3, 4)], [(1, 3), (2, 4)])


@pytest.fixture
def double_noose():
    # loops a=(1 2), b=(3 4), middle edge c=(5 6)
    return build_graph([(1, 2, 5), (3, 4, 6)], [(1, 2), (3, 4), (5, 6)])


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name}")
