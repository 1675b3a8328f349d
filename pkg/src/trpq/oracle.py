"""Direct point-wise query evaluation over discrete time.

This is the ground truth: a deliberately plain implementation of the query
semantics by structural recursion, enumerating every integer time point.  It
shares no evaluation code with the compact evaluators so that a bug in one
cannot mask a bug in the other.
"""

from __future__ import annotations

from typing import NamedTuple

from . import intervals as iv
from . import query as q_
from .errors import DenseInfeasibleError, FixpointLimitError
from .graph import TemporalGraph, graph_nodes
from .intervals import Number


class PointTuple(NamedTuple):
    n1: str
    n2: str
    t: Number
    d: Number


PointSet = frozenset[PointTuple]

_DEFAULT_CAP = 10_000


def eval_direct(G: TemporalGraph, q: q_.Trpq, *, max_iterations: int = _DEFAULT_CAP) -> PointSet:
    """All answers to ``q`` over ``G`` as explicit (n1, n2, t, d) tuples."""
    if not G.discrete:
        raise DenseInfeasibleError(
            "dense time: direct evaluation may yield infinitely many point answers"
        )
    q = q_.adapt_query(q, discrete=True)
    nodes = sorted(graph_nodes(G))
    domain_points = list(iv.iter_points(G.domain))
    return frozenset(_eval(G, q, nodes, domain_points, max_iterations))


def _compose(A, B) -> set[PointTuple]:
    by_start: dict[tuple[str, Number], list[PointTuple]] = {}
    for b in B:
        by_start.setdefault((b.n1, b.t), []).append(b)
    out = set()
    for a in A:
        for b in by_start.get((a.n2, a.t + a.d), ()):
            out.add(PointTuple(a.n1, b.n2, a.t, a.d + b.d))
    return out


def _identity(nodes, domain_points) -> set[PointTuple]:
    return {PointTuple(n, n, t, 0) for n in nodes for t in domain_points}


def _closure(base: set[PointTuple], start: int, max_iterations: int) -> set[PointTuple]:
    """Union of all k-fold compositions of ``base`` for k >= start.

    Semi-naive: only tuples derived in the previous round are re-joined.
    """
    current = set(base)
    for _ in range(start - 1):
        current = _compose(current, base)
    total = set(current)
    delta = current
    rounds = 0
    while delta:
        rounds += 1
        if rounds > max_iterations:
            raise FixpointLimitError(f"no fixpoint after {max_iterations} rounds")
        delta = _compose(delta, base) - total
        total |= delta
    return total


def _eval(G, q, nodes, domain_points, cap) -> set[PointTuple]:
    if isinstance(q, q_.Label):
        out = set()
        for s, o, validity in G.triples_with_label(q.name):
            for interval in validity:
                for t in iv.iter_points(interval):
                    out.add(PointTuple(s, o, t, 0))
        return out
    if isinstance(q, q_.Inverse):
        return {PointTuple(u.n2, u.n1, u.t, 0) for u in _eval(G, q.edge, nodes, domain_points, cap)}
    if isinstance(q, q_.Pred):
        if q.equals:
            matching = [q.target]
        else:
            matching = [n for n in nodes if n != q.target]
        return {PointTuple(n, n, t, 0) for n in matching for t in domain_points}
    if isinstance(q, q_.LeqTime):
        return {PointTuple(n, n, t, 0) for n in nodes for t in domain_points if t <= q.bound}
    if isinstance(q, q_.TimeNav):
        out = set()
        for n in nodes:
            for t in domain_points:
                landing = iv.intersect(iv.shift(q.delta, t), G.domain)
                if landing is None:
                    continue
                for t2 in iv.iter_points(landing):
                    out.add(PointTuple(n, n, t, t2 - t))
        return out
    if isinstance(q, q_.Test):
        return {PointTuple(u.n1, u.n1, u.t, 0) for u in _eval(G, q.inner, nodes, domain_points, cap)}
    if isinstance(q, q_.Not):
        inner = _eval(G, q.inner, nodes, domain_points, cap)
        return _identity(nodes, domain_points) - inner
    if isinstance(q, q_.Join):
        return _compose(
            _eval(G, q.lhs, nodes, domain_points, cap),
            _eval(G, q.rhs, nodes, domain_points, cap),
        )
    if isinstance(q, q_.Union):
        return _eval(G, q.lhs, nodes, domain_points, cap) | _eval(
            G, q.rhs, nodes, domain_points, cap
        )
    if isinstance(q, q_.Repeat):
        base = _eval(G, q.inner, nodes, domain_points, cap)
        out: set[PointTuple] = set()
        start = q.m
        if q.m == 0:
            out |= _identity(nodes, domain_points)
            start = 1
        if q.n is None:
            out |= _closure(base, start, cap)
            return out
        current = set(base)
        for _ in range(start - 1):
            current = _compose(current, base)
        for k in range(start, q.n + 1):
            out |= current
            if k < q.n:
                current = _compose(current, base)
        return out
    raise TypeError(f"not a query node: {q!r}")


def induced_relation(tuples, n1: str, n2: str) -> set[tuple[Number, Number]]:
    """The binary temporal relation {(t, t+d)} of the answers for one node pair."""
    return {(u.t, u.t + u.d) for u in tuples if u.n1 == n1 and u.n2 == n2}
