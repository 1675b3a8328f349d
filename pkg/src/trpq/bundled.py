"""Access to the graph and query documents shipped with the package."""

from importlib import resources

from .graph import TemporalGraph, load_graph
from .query import Trpq, parse_query


def data_text(name: str) -> str:
    return resources.files("trpq").joinpath("data", name).read_text(encoding="utf-8")


def bundled_graph(name: str) -> TemporalGraph:
    return load_graph(data_text(name))


def bundled_query(name: str) -> Trpq:
    return parse_query(data_text(name).strip())


def running_example() -> TemporalGraph:
    """The conference-attendance graph used throughout the documentation."""
    return bundled_graph("running.tg")
