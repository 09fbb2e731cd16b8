import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when == "teardown":
        return
    ok = call.excinfo is None
    seconds = call.stop - call.start
    prev = item.config._criteria.get(mark.args[0], (True, 0.0, []))
    parts = prev[2] + ([(item.name, ok, seconds)] if call.when == "call" or not ok else [])
    item.config._criteria[mark.args[0]] = (prev[0] and ok, prev[1] + seconds, parts)


def pytest_terminal_summary(terminalreporter, config):
    crit = config._criteria
    if not crit:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(crit):
        ok, seconds, parts = crit[n]
        tr.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f} s)")
        for name, part_ok, s in parts:
            if not part_ok:
                tr.write_line(f"              failed part: {name}")
