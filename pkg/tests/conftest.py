import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SLOW = os.environ.get("DEFICIT_SLOW", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="set DEFICIT_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def recognizer():
    from deficit.recognition import SphereRecognizer
    return SphereRecognizer()


@pytest.fixture(scope="session")
def strict_census(recognizer):
    from deficit import census
    return {r.K: r for r in census.enumerate_range(6, "strict", recognizer=recognizer)}


@pytest.fixture(scope="session")
def lenient_census(recognizer):
    from deficit import census
    return {r.K: r for r in census.enumerate_range(4, "lenient", recognizer=recognizer)}


@pytest.fixture(scope="session")
def sample_triangulations(lenient_census, strict_census):
    """A spread of valid triangulations: every lenient census member at K <= 3,
    a slice of K = 4, and the strict census."""
    out = []
    for K in (1, 2, 3):
        out.extend(lenient_census[K].triangulations)
    out.extend(lenient_census[4].triangulations[::10])
    for r in strict_census.values():
        out.extend(r.triangulations)
    return out


RESULTS = {}


def report(n, ok, detail):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
