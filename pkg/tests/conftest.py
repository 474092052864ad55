import re

import pytest

from ess import catalog as cat

_CRITERION = re.compile(r"test_criterion_(\d+)")


@pytest.fixture(scope="session")
def parabola():
    return cat.parabola_flat()


@pytest.fixture(scope="session")
def primary():
    return cat.nilpotent_primary()


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = _CRITERION.search(rep.nodeid)
            if m and (rep.when == "call" or rep.failed):
                n = int(m.group(1))
                outcomes[n] = outcomes.get(n, True) and rep.passed
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(outcomes):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if outcomes[n] else 'FAIL'}")
