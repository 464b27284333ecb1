import math

import numpy as np
import pytest
from hypothesis import assume, settings
from hypothesis import strategies as st

from tadgame import sampling
from tadgame.geometry import GameState
from tadgame.scenario import bundled_path, load_scenario

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

coord = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
alphas = st.floats(0.05, 0.95, allow_nan=False)


@st.composite
def states(draw, min_sep=0.5):
    T = (draw(coord), draw(coord))
    A = (draw(coord), draw(coord))
    D = (draw(coord), draw(coord))
    s = GameState.from_points(T, A, D, draw(alphas))
    assume(min(s.T.dist(s.A), s.T.dist(s.D), s.A.dist(s.D)) > min_sep)
    return s


def rc_states(margin=1e-3):
    """Capture-region states; hypothesis drives the seed of the rejection sampler."""
    return st.integers(0, 2**32 - 1).map(
        lambda seed: sampling.random_rc_states(np.random.default_rng(seed), 1, margin=margin)[0])


EXAMPLE1 = GameState(7.5, -3.28, 7.2, -4.5, 3.0, -2.0, 0.7)
EXAMPLE2 = GameState(6.4, 3.0, 8.0, 0.5, 1.5, -1.0, 0.5)
COLLINEAR = GameState(0.5, 0.0, 1.0, 0.0, -1.0, 0.0, 0.5)


@pytest.fixture
def example1_snapped():
    return load_scenario(bundled_path("example1")).state


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def angle_diff(a, b):
    return abs(math.remainder(a - b, 2 * math.pi))


ACCEPTANCE_LINES = []


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    line = f"CRITERION {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
