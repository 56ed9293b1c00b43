import os
import time
from fractions import Fraction as Fr

import pytest
from hypothesis import HealthCheck, settings

from projhermite.geometry import Point
from projhermite.number_field import QuadraticField

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def P(x, s, h):
    return Point(Fr(x), Fr(s), Fr(h))


# D = 39, base inf: the thirteen vertices P1..P13 (P12 = 1 + w - z6)
VERTS_INF = {
    1: P("-1/2", "-3/26", "3/13"),
    2: P(0, "-2/13", "1/13"),
    3: P("1/2", "-3/26", "3/13"),
    4: P("-1/2", "3/26", "3/13"),
    5: P(0, "2/13", "1/13"),
    6: P("1/2", "3/26", "3/13"),
    7: P("1/2", "5/26", "4/13"),
    8: P(1, "2/13", "1/13"),
    9: P(0, "4/13", "4/13"),
    10: P("1/2", "9/26", "1/13"),
    11: P(1, "4/13", "4/13"),
    12: P(1, "5/13", "3/13"),
    13: P("3/2", "9/26", "1/13"),
}

# D = 39, base w/2, in base coordinates
VERTS_W2 = {
    1: P("-1/4", "-3/52", "4/13"),
    2: P("1/4", "-5/52", "1/13"),
    3: P(1, "-2/13", "1/13"),
    4: P("7/4", "-3/52", "4/13"),
    5: P("-1/4", "5/52", "1/13"),
    6: P("1/4", "3/52", "4/13"),
    7: P("1/2", "5/26", "4/13"),
    8: P(1, "2/13", "1/13"),
    9: P("7/4", "5/52", "1/13"),
}


@pytest.fixture(scope="session")
def k39():
    return QuadraticField(39)


_ACCEPTANCE = {}


def record_acceptance(n, name, ok, seconds):
    _ACCEPTANCE[n] = (name, ok, seconds)
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {name} ({seconds:.1f} s)")


class Criterion:
    """Context manager timing one acceptance criterion and recording its verdict."""

    def __init__(self, n, name):
        self.n, self.name = n, name

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        record_acceptance(self.n, self.name, exc_type is None, time.perf_counter() - self.t)
        return False


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        name, ok, sec = _ACCEPTANCE[n]
        terminalreporter.write_line(f"{n}. {'PASS' if ok else 'FAIL'}  {name}  ({sec:.1f} s)")
