import pytest

from palettelab.constructions import (
    complete_three_graph,
    k4_minus,
    make_alternating_palette,
    make_rainbow,
)
from palettelab.core import three_graph


@pytest.fixture
def alternating():
    return make_alternating_palette()


@pytest.fixture
def rainbow():
    return make_rainbow()


@pytest.fixture
def single_edge():
    return three_graph(3, [(0, 1, 2)])


@pytest.fixture
def tight_path():
    return three_graph(4, [(0, 1, 2), (1, 2, 3)])


@pytest.fixture
def k4m():
    return k4_minus()


@pytest.fixture
def k4():
    return complete_three_graph(4)
