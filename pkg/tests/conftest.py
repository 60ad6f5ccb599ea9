import numpy as np
import pytest
from hypothesis import strategies as st

from ultragh import FiniteMetricSpace, random_euclidean, random_ultrametric

ACCEPTANCE_LINES = []


def line(*points):
    pts = np.array(points, dtype=float)
    return FiniteMetricSpace.from_matrix(np.abs(pts[:, None] - pts[None, :]))


def two_point(d):
    return FiniteMetricSpace.from_matrix([[0, d], [d, 0]])


def equilateral(n, side):
    return FiniteMetricSpace.from_matrix(side * (1 - np.eye(n)))


@st.composite
def spaces(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    if draw(st.booleans()):
        return random_ultrametric(n, seed)
    dim = draw(st.integers(1, 3))
    return random_euclidean(n, dim, seed)


def random_space(rng, n_max, n_min=1, kinds=("euclidean", "ultrametric")):
    n = int(rng.integers(n_min, n_max + 1))
    seed = int(rng.integers(2**32))
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "ultrametric":
        return random_ultrametric(n, seed)
    return random_euclidean(n, int(rng.integers(1, 4)), seed)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for text in ACCEPTANCE_LINES:
            terminalreporter.write_line(text)
