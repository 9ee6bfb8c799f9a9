import cmath
import math

import pytest

from delaymargin import Plant

EXAMPLE_PLANT_NUM = [0.01, -0.098341, -0.01659]  # 0.1 (0.1 s - 1)(s + 0.1659)
EXAMPLE_PLANT_DEN = [1.0, 0.19, 0.03058539, -0.006789761]  # (s - 0.1081)(s^2 + 0.2981 s + 0.06281)


@pytest.fixture
def example_plant():
    return Plant([0.1081], [10.0])


def conjugate_pair_plant(r, theta, zeros=()):
    p = r * cmath.exp(1j * theta)
    return Plant([p, p.conjugate()], list(zeros))


@pytest.fixture
def pair_plant():
    return conjugate_pair_plant(1.0, math.pi / 3, [0.5])


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_REPORT = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_REPORT):
        terminalreporter.write_line(ACCEPTANCE_REPORT[key])
