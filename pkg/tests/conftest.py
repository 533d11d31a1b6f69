import pytest

from zdgq.graphs import build_zero_divisor_graph, cartesian_product, make_path, make_star


@pytest.fixture(scope="session")
def g18():
    return build_zero_divisor_graph(18)


@pytest.fixture(scope="session")
def g21():
    return build_zero_divisor_graph(21)


@pytest.fixture(scope="session")
def g27():
    return build_zero_divisor_graph(27)


@pytest.fixture(scope="session")
def p2_k14():
    """Box product of an edge with the 4-star; hubs are (0,0) and (1,0)."""
    return cartesian_product(make_path(2), make_star(5))
