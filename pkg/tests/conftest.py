import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gyrotable import catalog  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run long searches (order 8 enumeration)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                lines.append((rep.nodeid.split("::")[-1], status.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines, key=lambda x: int(x[0].split("_")[1][2:])):
            verdict = "PASS" if status == "PASSED" else "FAIL"
            terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture
def K():
    return catalog.gyrogroup("K1")


@pytest.fixture(params=catalog.GYROGROUP_NAMES)
def gyro8(request):
    return catalog.gyrogroup(request.param)


@pytest.fixture(params=catalog.names())
def any_catalog(request):
    return catalog.gyrogroup(request.param)


def plain(g):
    return [list(r) for r in g.cayley]
