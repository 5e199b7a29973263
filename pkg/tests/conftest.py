import pytest

from grover_zeta import (
    complete_graph,
    cycle_graph,
    orient_random,
    petersen_graph,
    random_regular_graph,
)


@pytest.fixture
def k2():
    return complete_graph(2)


@pytest.fixture
def c3():
    return cycle_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def k4_phased():
    """K4 with half the edges directed and uniformly phased."""
    return orient_random(complete_graph(4), 0.5, phases="uniform", seed=42)


@pytest.fixture
def cubic_phased():
    """Random 3-regular graph on 8 vertices with random orientations/phases."""
    return orient_random(random_regular_graph(8, 3, seed=11), 0.6, phases="uniform", seed=7)
