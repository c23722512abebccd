import random

import pytest
from hypothesis import strategies as st

from noeth import RealFunction, build_space, validate_map
from noeth.generate import random_space


@pytest.fixture
def fan():
    return build_space(["eta", "p", "q"], [("p", "eta"), ("q", "eta")])


@pytest.fixture
def chain3():
    return build_space(["a", "b", "c"], [("c", "b"), ("b", "a")])


@pytest.fixture
def fuzzy():
    return build_space(["u", "v"], [("u", "v"), ("v", "u")])


@pytest.fixture
def swap(fan):
    return validate_map(fan, {"eta": "eta", "p": "q", "q": "p"})


@pytest.fixture
def fold(fan):
    return validate_map(fan, {"eta": "eta", "p": "p", "q": "p"})


@pytest.fixture
def tau1(fan):
    return RealFunction(fan, {"eta": 0, "p": 1, "q": 3})


@st.composite
def spaces(draw, max_points=7, non_t0=True):
    """Random preorders drawn as a seed for the library generator."""
    n = draw(st.integers(1, max_points))
    seed = draw(st.integers(0, 2**32))
    glue = draw(st.sampled_from([0.0, 0.3])) if non_t0 else 0.0
    return random_space(random.Random(seed), n, non_t0=glue)


DATA = __import__("pathlib").Path(__file__).resolve().parents[1] / "demos" / "data"


@pytest.fixture
def data():
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
