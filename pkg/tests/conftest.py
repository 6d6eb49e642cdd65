import numpy as np
import pytest

from wflo import WakeParams, mosetti_regime_2


def pytest_addoption(parser):
    parser.addoption(
        "--extended",
        action="store_true",
        default=False,
        help="run the hours-long l_grid=4 VQE campaigns",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def regime():
    return mosetti_regime_2()


@pytest.fixture(scope="session")
def params():
    return WakeParams()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)




_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if call.when == "call" or call.excinfo is not None:
        failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
        skipped = call.excinfo is not None and call.excinfo.errisinstance(pytest.skip.Exception)
        previous = _CRITERIA.get(n, (title, "PASS"))[1]
        status = "FAIL" if failed or previous == "FAIL" else ("SKIP" if skipped else previous)
        _CRITERIA[n] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
