import pytest

from pushcurve.curves import CurveClass
from pushcurve.group import GroupWord, Kind, build_group
from pushcurve.pushing import build_level_frame, make_push_map, select_base_vertex

# filling word found by search over length-4 words (see README)
FILLING = "a1 a2 b1 b2"


def W(text):
    return GroupWord.parse(text)


@pytest.fixture(scope="session")
def G():
    return build_group(2, Kind.Closed)


@pytest.fixture(scope="session")
def GP():
    return build_group(2, Kind.Punctured)


@pytest.fixture(scope="session")
def curve(G):
    return lambda text: CurveClass(W(text), G)


@pytest.fixture(scope="session")
def pm(G):
    return make_push_map(W(FILLING), G, cap=4)


@pytest.fixture(scope="session")
def base_i1(pm, G):
    return select_base_vertex(pm, "i1")


@pytest.fixture(scope="session")
def base_i2(pm, G):
    return select_base_vertex(pm, "i2")


@pytest.fixture(scope="session")
def frame_i1(pm, base_i1):
    return build_level_frame(pm, base_i1, 6)


@pytest.fixture(scope="session")
def frame_i2(pm, base_i2):
    return build_level_frame(pm, base_i2, 6)
