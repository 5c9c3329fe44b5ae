import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lib.solver import SolveSpec, FixTunneling, FixTime, solve_controlled_u  # noqa: E402
from lib.su2 import EulerAngles, named_gate  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope='session')
def cnot_solution():
    _, angles = named_gate('x')
    return solve_controlled_u(SolveSpec(angles=angles, fix=FixTunneling(0.025)))[0]


@pytest.fixture(scope='session')
def generic_angles():
    return EulerAngles(np.pi / 2, np.pi / 2, np.pi / 3)


@pytest.fixture(scope='session')
def generic_solution(generic_angles):
    candidates = solve_controlled_u(SolveSpec(angles=generic_angles, fix=FixTime(10.0)))
    return next(c for c in candidates if c.branch == 1)
