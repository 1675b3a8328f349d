import pytest

from trpq import bundled_graph, bundled_query


@pytest.fixture(scope="session")
def running():
    return bundled_graph("running.tg")


@pytest.fixture(scope="session")
def running_dense():
    return bundled_graph("running_dense.tg")


@pytest.fixture(scope="session")
def q3():
    return bundled_query("q3.trpq")


@pytest.fixture(scope="session")
def closure_graph():
    return bundled_graph("closure.tg")


@pytest.fixture(scope="session")
def parallelogram():
    return bundled_graph("parallelogram.tg")


# the 7 point answers of the documented example query, as (t, d) pairs
Q3_POINTS = {(100, 4), (100, 5), (101, 3), (101, 4), (101, 5), (102, 3), (102, 4)}


@pytest.fixture(scope="session")
def q3_points():
    return set(Q3_POINTS)
