import math
import sys

import numpy as np
import pytest

from entanglyze.states import (
    BellKind,
    SupersingletParams,
    bell,
    brs_chain,
    ghz,
    supersinglet_s4,
)


def _s4(a, b):
    return supersinglet_s4(SupersingletParams(a, b))


def builtin_maxent_states():
    """Named maximally entangled states used across property suites."""
    states = {f"ghz{n}": ghz(n) for n in (2, 3, 4, 5)}
    states.update({f"brs{n}": brs_chain(n) for n in (3, 4, 5, 6)})
    states.update({f"bell_{k.value}": bell(k) for k in BellKind})
    states["s4_0_1"] = _s4(0, 1)
    states["s4_1_0"] = _s4(1, 0)
    states["s4_special"] = _s4(math.sqrt(3) / 2, 0.5)
    states["s4_generic"] = _s4(0.6 * np.exp(0.4j), 0.8 * np.exp(-1.1j))
    return states


BUILTIN = builtin_maxent_states()


@pytest.fixture(params=sorted(BUILTIN))
def maxent_state(request):
    return request.param, BUILTIN[request.param]


def random_axis(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
