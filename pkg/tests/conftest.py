import pytest

from nikishin import (Arc, CircleMeasure, GeneratorChainRL, GeneratorChainUC, Interval,
                      RealMeasure, build_system)
from nikishin.precision import mpf

ACCEPTANCE_LINES = []


def real_system(*starts):
    """Uniform generators on [a, a+1] for each start a."""
    return build_system(GeneratorChainRL([RealMeasure(Interval(a, a + 1)) for a in starts]))


def circle_system(*arcs):
    return build_system(GeneratorChainUC([CircleMeasure(Arc(mpf(a), mpf(b))) for a, b in arcs]))


ARCS = (("0.3", "1.3"), ("2.0", "3.0"))


@pytest.fixture(scope="session")
def rl2():
    return real_system(0, 2)


@pytest.fixture(scope="session")
def rl3():
    return real_system(0, 2, 4)


@pytest.fixture(scope="session")
def uc2():
    return circle_system(*ARCS)


@pytest.fixture(scope="session")
def uc1():
    return circle_system(ARCS[0])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
