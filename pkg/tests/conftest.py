import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from qgame.game import ClassicalGame
from qgame.hilbert import Correlation
from qgame.strategy import LocalStrategy

GAMES_DIR = Path(__file__).resolve().parent.parent / "games"

payoff_value = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
payoff_matrix = st.tuples(payoff_value, payoff_value, payoff_value, payoff_value)
angle = st.floats(0.0, 2 * math.pi, allow_nan=False)
theta = st.floats(0.0, math.pi, allow_nan=False)
correlations = st.builds(Correlation, angle, angle)
strategies = st.builds(LocalStrategy, theta, angle)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def games_dir():
    return GAMES_DIR


def random_strategy(rng) -> LocalStrategy:
    return LocalStrategy(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))


def random_correlation(rng) -> Correlation:
    return Correlation(*rng.uniform(0, 2 * math.pi, 2))


def random_t_game(rng, scale: float = 5.0) -> ClassicalGame:
    return ClassicalGame.t_symmetric(rng.uniform(-scale, scale, 4))


def random_game(rng, scale: float = 5.0) -> ClassicalGame:
    kind = rng.integers(3)
    a = rng.uniform(-scale, scale, 4)
    if kind == 0:
        return ClassicalGame.s_symmetric(a)
    if kind == 1:
        return ClassicalGame.t_symmetric(a)
    return ClassicalGame.explicit(a, rng.uniform(-scale, scale, 4))


SH = (4.0, 0.0, 3.0, 3.0)
PD = (3.0, 0.0, 5.0, 1.0)
BOS = (2.0, 0.0, 0.0, 1.0)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
