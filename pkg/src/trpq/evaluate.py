"""The four inductive compact evaluators.

Each evaluator computes, by structural recursion, a finite set of compact
tuples whose unfolding is exactly the direct answer set:

* ``eval_t``  in U^t  (works over dense time only when every temporal
  navigation interval is a singleton);
* ``eval_d``  in U^d  (over dense time, feasible only when no step needs to
  enumerate the points of a non-singleton interval; the join with a trailing
  temporal navigation is fused into a unary rule so that navigation never has
  to be materialised on its own);
* ``eval_td`` in U^td (discrete time only: its join expands per time point);
* ``eval_c``  in U^c  (both modes; the representation closed under join).

Unbounded repetition iterates join rounds semi-naively with structural
deduplication; over dense time a configurable round cap guards against
non-terminating closures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import intervals as iv
from . import query as q_
from .errors import DenseInfeasibleError, FixpointLimitError, InvalidTupleError
from .graph import TemporalGraph, graph_nodes
from .intervals import Interval, Number
from .tuples import (
    CTuple,
    DTuple,
    TDTuple,
    TTuple,
    admissible_window,
    coalesce_t_tuples,
    ctuple_valid,
    render_tuple,
    tuple_sort_key,
)

KINDS = ("point", "t", "d", "td", "c")

_ZERO = iv.point(0)


@dataclass
class EvalOptions:
    """Evaluator knobs.

    ``max_iterations`` caps the rounds of unbounded-repetition closure;
    ``coalesce_intermediate`` opts in to coalescing intermediate results in
    eval_t / eval_d, which can shrink the operands of the quadratic join.
    """

    max_iterations: int = 10_000
    coalesce_intermediate: bool = False


class AnswerSet:
    """A deduplicated, canonically ordered set of answer tuples."""

    __slots__ = ("kind", "mode", "tuples")

    def __init__(self, kind: str, mode: str, items: Iterable):
        if kind not in KINDS:
            raise ValueError(f"unknown representation {kind!r}")
        self.kind = kind
        self.mode = mode
        self.tuples = tuple(sorted(set(items), key=tuple_sort_key))

    def __iter__(self):
        return iter(self.tuples)

    def __len__(self):
        return len(self.tuples)

    def __eq__(self, other):
        return (
            isinstance(other, AnswerSet)
            and (self.kind, self.mode, self.tuples) == (other.kind, other.mode, other.tuples)
        )

    def __hash__(self):
        return hash((self.kind, self.mode, self.tuples))

    def __repr__(self):
        return f"AnswerSet({self.kind!r}, {self.mode!r}, {len(self.tuples)} tuples)"

    def render(self) -> str:
        return "\n".join(render_tuple(u) for u in self.tuples)


def _options(options: Optional[EvalOptions]) -> EvalOptions:
    return options if options is not None else EvalOptions()


def _leq_window(domain: Interval, k: Number) -> Optional[Interval]:
    """The part of the domain at or before k; None when there is none."""
    if k >= domain.hi:
        return domain
    if k < domain.lo or (k == domain.lo and not domain.left_closed):
        return None
    return Interval(domain.lo, k, domain.left_closed, True)


def _repeat_sets(base, m, n, identity, join_sets, cap):
    """Union of the k-fold join powers of ``base`` for m <= k (<= n).

    k = 0 contributes the node-identity relation.  The unbounded case runs
    semi-naive iteration: only tuples new in the previous round are re-joined.
    """
    out = set()
    start = m
    if m == 0:
        out |= identity
        start = 1
    current = set(base)
    for _ in range(start - 1):
        current = join_sets(current, base)
    if n is not None:
        k = start
        while k <= n:
            out |= current
            k += 1
            if k <= n:
                current = join_sets(current, base)
        return out
    total = set(current)
    delta = set(current)
    rounds = 0
    while delta:
        rounds += 1
        if rounds > cap:
            raise FixpointLimitError(
                f"unbounded repetition did not stabilise after {cap} rounds; "
                "raise --max-iterations / TRPQ_MAX_ITER if the query is expected to converge"
            )
        delta = join_sets(delta, base) - total
        total |= delta
    return out | total


def _bucket_by_n1(tuples):
    buckets: dict[str, list] = {}
    for u in tuples:
        buckets.setdefault(u.n1, []).append(u)
    return buckets


def _node_gaps(tuples, node, domain, discrete):
    """Complement, within the domain, of the time intervals of node-form answers."""
    taus = [u.tau for u in tuples if u.n1 == node]
    return iv.complement(taus, domain, discrete=discrete)


# --------------------------------------------------------------------------
# U^t
# --------------------------------------------------------------------------


def _check_dense_t_feasible(q: q_.Trpq):
    if isinstance(q, q_.TimeNav):
        if not q.delta.is_singleton:
            raise DenseInfeasibleError(
                "dense time: U^t requires every temporal navigation interval "
                f"to be a singleton, got T{q.delta}"
            )
        return
    for child in _children(q):
        _check_dense_t_feasible(child)


def _children(q: q_.Trpq):
    if isinstance(q, q_.Inverse):
        return (q.edge,)
    if isinstance(q, (q_.Test, q_.Not, q_.Repeat)):
        return (q.inner,)
    if isinstance(q, (q_.Join, q_.Union)):
        return (q.lhs, q.rhs)
    return ()


def eval_t(G: TemporalGraph, q: q_.Trpq, options: Optional[EvalOptions] = None) -> AnswerSet:
    """Inductive evaluation folding time points: tuples (n1, n2, tau, d)."""
    opts = _options(options)
    q = q_.adapt_query(q, G.discrete)
    if not G.discrete:
        _check_dense_t_feasible(q)
    nodes = sorted(graph_nodes(G))
    return AnswerSet("t", G.mode, _eval_t(G, q, nodes, opts))


def _join_t_pair(u1: TTuple, u2: TTuple) -> Optional[TTuple]:
    overlap = iv.intersect(iv.shift(u1.tau, u1.d), u2.tau)
    if overlap is None:
        return None
    return TTuple(u1.n1, u2.n2, iv.shift(overlap, -u1.d), u1.d + u2.d)


def _join_t_sets(A, B) -> set:
    buckets = _bucket_by_n1(B)
    out = set()
    for u1 in A:
        for u2 in buckets.get(u1.n2, ()):
            joined = _join_t_pair(u1, u2)
            if joined is not None:
                out.add(joined)
    return out


def _eval_t(G, q, nodes, opts) -> set:
    domain = G.domain

    def finish(result: set) -> set:
        if opts.coalesce_intermediate:
            return set(coalesce_t_tuples(result, discrete=G.discrete))
        return result

    if isinstance(q, q_.Label):
        return finish(
            {
                TTuple(s, o, tau, 0)
                for s, o, validity in G.triples_with_label(q.name)
                for tau in validity
            }
        )
    if isinstance(q, q_.Inverse):
        inner = _eval_t(G, q.edge, nodes, opts)
        return finish({TTuple(u.n2, u.n1, u.tau, 0) for u in inner})
    if isinstance(q, q_.Pred):
        matching = [q.target] if q.equals else [n for n in nodes if n != q.target]
        return finish({TTuple(n, n, domain, 0) for n in matching})
    if isinstance(q, q_.LeqTime):
        window = _leq_window(domain, q.bound)
        if window is None:
            return set()
        return finish({TTuple(n, n, window, 0) for n in nodes})
    if isinstance(q, q_.TimeNav):
        out = set()
        if G.discrete:
            # one tuple per (n, t1, t2): singleton time interval, fixed distance
            for t1 in iv.iter_points(domain):
                landing = iv.intersect(iv.shift(q.delta, t1), domain)
                if landing is None:
                    continue
                for t2 in iv.iter_points(landing):
                    for n in nodes:
                        out.add(TTuple(n, n, iv.point(t1), t2 - t1))
        else:
            d = q.delta.lo  # singleton, checked up front
            window = iv.intersect(domain, iv.shift(domain, -d))
            if window is not None:
                out = {TTuple(n, n, window, d) for n in nodes}
        return finish(out)
    if isinstance(q, q_.Test):
        inner = _eval_t(G, q.inner, nodes, opts)
        return finish({TTuple(u.n1, u.n1, u.tau, 0) for u in inner})
    if isinstance(q, q_.Not):
        inner = _eval_t(G, q.inner, nodes, opts)
        out = set()
        for n in nodes:
            for gap in _node_gaps(inner, n, domain, G.discrete):
                out.add(TTuple(n, n, gap, 0))
        return finish(out)
    if isinstance(q, q_.Join):
        lhs = _eval_t(G, q.lhs, nodes, opts)
        rhs = _eval_t(G, q.rhs, nodes, opts)
        return finish(_join_t_sets(lhs, rhs))
    if isinstance(q, q_.Union):
        return finish(_eval_t(G, q.lhs, nodes, opts) | _eval_t(G, q.rhs, nodes, opts))
    if isinstance(q, q_.Repeat):
        base = _eval_t(G, q.inner, nodes, opts)
        identity = {TTuple(n, n, domain, 0) for n in nodes}
        return finish(
            _repeat_sets(base, q.m, q.n, identity, _join_t_sets, opts.max_iterations)
        )
    raise TypeError(f"not a query node: {q!r}")


# --------------------------------------------------------------------------
# U^d
# --------------------------------------------------------------------------
#
# Internally eval_d works on groups (n1, n2, tau, delta): one DTuple per time
# point of tau, all sharing delta.  Node and edge filters produce finitely
# many groups even over dense time; a group is expanded to individual time
# points only where a rule genuinely needs it, which over dense time is an
# error unless the group's time interval is a singleton.  Groups reuse the
# TDTuple shape (their unfolding is the same rectangle).


def eval_d(G: TemporalGraph, q: q_.Trpq, options: Optional[EvalOptions] = None) -> AnswerSet:
    """Inductive evaluation folding distances: tuples (n1, n2, t, delta)."""
    opts = _options(options)
    q = q_.adapt_query(q, G.discrete)
    nodes = sorted(graph_nodes(G))
    groups = _eval_d(G, q, nodes, opts)
    out = []
    for g in groups:
        for t in _expand_times(g.tau, G.discrete, "U^d"):
            out.append(DTuple(g.n1, g.n2, t, g.delta))
    return AnswerSet("d", G.mode, out)


def _expand_times(tau: Interval, discrete: bool, repr_name: str):
    if discrete:
        return iv.iter_points(tau)
    if tau.is_singleton:
        return (tau.lo,)
    raise DenseInfeasibleError(
        f"dense time: {repr_name} would need one tuple per rational time point of {tau}"
    )


def _join_d_pair(u1: TDTuple, u2: TDTuple, G) -> set:
    out = set()
    if u1.delta.is_singleton:
        # fixed hop length c: departures are arrivals shifted back by c
        c = u1.delta.lo
        shared = iv.intersect(u1.tau, iv.shift(u2.tau, -c))
        if shared is not None:
            out.add(TDTuple(u1.n1, u2.n2, shared, iv.shift(u2.delta, c)))
        return out
    for t1 in _expand_times(u1.tau, G.discrete, "U^d"):
        arrivals = iv.intersect(u2.tau, iv.shift(u1.delta, t1))
        if arrivals is None:
            continue
        out.add(
            TDTuple(u1.n1, u2.n2, iv.point(t1), iv.msum(iv.shift(arrivals, -t1), u2.delta))
        )
    return out


def _join_d_sets_factory(G) -> Callable:
    def join_sets(A, B) -> set:
        buckets = _bucket_by_n1(B)
        out = set()
        for u1 in A:
            for u2 in buckets.get(u1.n2, ()):
                out |= _join_d_pair(u1, u2, G)
        return out

    return join_sets


def _fused_nav_d(groups, delta: Interval, G, node_set) -> set:
    """The unary rule for a join whose right operand is temporal navigation.

    Distances extend by the navigation interval, and arrivals clip to the
    effective domain; when nothing would be clipped the whole group survives.
    """
    out = set()
    for g in groups:
        if g.n2 not in node_set:
            continue
        extended = iv.msum(g.delta, delta)
        if iv.covers(G.domain, iv.msum(g.tau, extended)):
            out.add(TDTuple(g.n1, g.n2, g.tau, extended))
            continue
        for t in _expand_times(g.tau, G.discrete, "U^d"):
            arrivals = iv.intersect(iv.shift(extended, t), G.domain)
            if arrivals is None:
                continue
            out.add(TDTuple(g.n1, g.n2, iv.point(t), iv.shift(arrivals, -t)))
    return out


def _eval_d(G, q, nodes, opts) -> set:
    domain = G.domain
    node_set = set(nodes)

    def finish(result: set) -> set:
        if opts.coalesce_intermediate:
            merged = set()
            groups: dict[tuple[str, str, Interval], list[Interval]] = {}
            for g in result:
                groups.setdefault((g.n1, g.n2, g.tau), []).append(g.delta)
            for (n1, n2, tau), deltas in groups.items():
                for delta in iv.coalesce(deltas, discrete=G.discrete):
                    merged.add(TDTuple(n1, n2, tau, delta))
            return merged
        return result

    if isinstance(q, q_.Label):
        return finish(
            {
                TDTuple(s, o, tau, _ZERO)
                for s, o, validity in G.triples_with_label(q.name)
                for tau in validity
            }
        )
    if isinstance(q, q_.Inverse):
        inner = _eval_d(G, q.edge, nodes, opts)
        return finish({TDTuple(g.n2, g.n1, g.tau, g.delta) for g in inner})
    if isinstance(q, q_.Pred):
        matching = [q.target] if q.equals else [n for n in nodes if n != q.target]
        return finish({TDTuple(n, n, domain, _ZERO) for n in matching})
    if isinstance(q, q_.LeqTime):
        window = _leq_window(domain, q.bound)
        if window is None:
            return set()
        return finish({TDTuple(n, n, window, _ZERO) for n in nodes})
    if isinstance(q, q_.TimeNav):
        out = set()
        for n in nodes:
            for t in _expand_times(domain, G.discrete, "U^d"):
                landing = iv.intersect(iv.shift(q.delta, t), domain)
                if landing is None:
                    continue
                out.add(TDTuple(n, n, iv.point(t), iv.shift(landing, -t)))
        return finish(out)
    if isinstance(q, q_.Test):
        inner = _eval_d(G, q.inner, nodes, opts)
        return finish({TDTuple(g.n1, g.n1, g.tau, _ZERO) for g in inner})
    if isinstance(q, q_.Not):
        inner = _eval_d(G, q.inner, nodes, opts)
        out = set()
        for n in nodes:
            for gap in _node_gaps(inner, n, domain, G.discrete):
                out.add(TDTuple(n, n, gap, _ZERO))
        return finish(out)
    if isinstance(q, q_.Join):
        lhs = _eval_d(G, q.lhs, nodes, opts)
        if isinstance(q.rhs, q_.TimeNav):
            return finish(_fused_nav_d(lhs, q.rhs.delta, G, node_set))
        rhs = _eval_d(G, q.rhs, nodes, opts)
        return finish(_join_d_sets_factory(G)(lhs, rhs))
    if isinstance(q, q_.Union):
        return finish(_eval_d(G, q.lhs, nodes, opts) | _eval_d(G, q.rhs, nodes, opts))
    if isinstance(q, q_.Repeat):
        base = _eval_d(G, q.inner, nodes, opts)
        identity = {TDTuple(n, n, domain, _ZERO) for n in nodes}
        return finish(
            _repeat_sets(
                base, q.m, q.n, identity, _join_d_sets_factory(G), opts.max_iterations
            )
        )
    raise TypeError(f"not a query node: {q!r}")


# --------------------------------------------------------------------------
# U^td
# --------------------------------------------------------------------------


def join_td(u1: TDTuple, u2: TDTuple) -> tuple[TDTuple, ...]:
    """Composition of two rectangles: one tuple per departure time point.

    The arrival window (tau1 + delta1) n tau2 fixes, per departure time t, an
    interval of admissible distances; those slices are not constant in t, so
    the result expands to singleton-time tuples.  Discrete time only.
    """
    if u1.n2 != u2.n1:
        return ()
    for interval in (u1.tau, u1.delta, u2.tau, u2.delta):
        if not iv.is_discrete_canonical(interval):
            raise DenseInfeasibleError(
                "dense time: the U^td join expands per time point and is not finite"
            )
    arrivals = iv.intersect(iv.msum(u1.tau, u1.delta), u2.tau)
    if arrivals is None:
        return ()
    window = iv.intersect(iv.mdiff(arrivals, u1.delta), u1.tau)
    if window is None:
        return ()
    b = arrivals.lo - u1.delta.lo
    e = arrivals.hi - u1.delta.hi
    out = []
    for t in iv.iter_points(window):
        lo = u1.delta.lo + max(0, b - t)
        hi = u1.delta.hi - max(0, t - e)
        if lo > hi:
            continue
        out.append(TDTuple(u1.n1, u2.n2, iv.point(t), iv.msum(Interval(lo, hi), u2.delta)))
    return tuple(out)


def _join_td_sets(A, B) -> set:
    buckets = _bucket_by_n1(B)
    out = set()
    for u1 in A:
        for u2 in buckets.get(u1.n2, ()):
            out.update(join_td(u1, u2))
    return out


def eval_td(G: TemporalGraph, q: q_.Trpq, options: Optional[EvalOptions] = None) -> AnswerSet:
    """Inductive evaluation folding both dimensions into plain rectangles."""
    if not G.discrete:
        raise DenseInfeasibleError("dense time: U^td may require infinitely many rectangles")
    opts = _options(options)
    q = q_.adapt_query(q, True)
    nodes = sorted(graph_nodes(G))
    return AnswerSet("td", G.mode, _eval_td(G, q, nodes, opts))


def _eval_td(G, q, nodes, opts) -> set:
    domain = G.domain
    if isinstance(q, q_.Label):
        return {
            TDTuple(s, o, tau, _ZERO)
            for s, o, validity in G.triples_with_label(q.name)
            for tau in validity
        }
    if isinstance(q, q_.Inverse):
        return {TDTuple(u.n2, u.n1, u.tau, u.delta) for u in _eval_td(G, q.edge, nodes, opts)}
    if isinstance(q, q_.Pred):
        matching = [q.target] if q.equals else [n for n in nodes if n != q.target]
        return {TDTuple(n, n, domain, _ZERO) for n in matching}
    if isinstance(q, q_.LeqTime):
        window = _leq_window(domain, q.bound)
        if window is None:
            return set()
        return {TDTuple(n, n, window, _ZERO) for n in nodes}
    if isinstance(q, q_.TimeNav):
        out = set()
        for n in nodes:
            out.update(
                join_td(TDTuple(n, n, domain, q.delta), TDTuple(n, n, domain, _ZERO))
            )
        return out
    if isinstance(q, q_.Test):
        return {TDTuple(u.n1, u.n1, u.tau, _ZERO) for u in _eval_td(G, q.inner, nodes, opts)}
    if isinstance(q, q_.Not):
        inner = _eval_td(G, q.inner, nodes, opts)
        out = set()
        for n in nodes:
            for gap in _node_gaps(inner, n, domain, True):
                out.add(TDTuple(n, n, gap, _ZERO))
        return out
    if isinstance(q, q_.Join):
        return _join_td_sets(
            _eval_td(G, q.lhs, nodes, opts), _eval_td(G, q.rhs, nodes, opts)
        )
    if isinstance(q, q_.Union):
        return _eval_td(G, q.lhs, nodes, opts) | _eval_td(G, q.rhs, nodes, opts)
    if isinstance(q, q_.Repeat):
        base = _eval_td(G, q.inner, nodes, opts)
        identity = {TDTuple(n, n, domain, _ZERO) for n in nodes}
        return _repeat_sets(base, q.m, q.n, identity, _join_td_sets, opts.max_iterations)
    raise TypeError(f"not a query node: {q!r}")


# --------------------------------------------------------------------------
# U^c
# --------------------------------------------------------------------------


def join_c(u1: CTuple, u2: CTuple) -> Optional[CTuple]:
    """Composition of two cropped rectangles; None when they do not chain.

    The departure window is (arrivals ominus delta1) n tau1, guarded by two
    reachability conditions on the crop points (the windowed form with the
    effective distance interval breaks down when the left operand is cropped
    on both sides).  The result is again a valid cropped rectangle.
    """
    for u in (u1, u2):
        if not ctuple_valid(u):
            raise InvalidTupleError(f"not a valid cropped tuple: {render_tuple(u)}")
    if u1.n2 != u2.n1:
        return None
    tau1, d1 = u1.tau, u1.delta
    # effective distance boundaries over the whole tuple (formal pair: the
    # lower one is taken at the earliest departure, the upper at the latest)
    eff_lo = d1.lo + max(0, u1.b - tau1.lo)
    eff_hi = d1.hi - max(0, tau1.hi - u1.e)
    # arrival range; its infimum is attained anywhere on the flat part of the
    # arrival-lower-bound function, hence the b/e disjuncts in the delimiters
    arrivals = Interval(
        tau1.lo + eff_lo,
        tau1.hi + eff_hi,
        d1.left_closed and (tau1.left_closed or u1.b > tau1.lo),
        d1.right_closed and (tau1.right_closed or u1.e < tau1.hi),
    )
    landing = iv.intersect(arrivals, u2.tau)
    if landing is None:
        return None
    # reachability of the landing window past the crop points
    lo_reach = u1.b + d1.lo
    if lo_reach > landing.hi or (
        lo_reach == landing.hi and not (d1.left_closed and landing.right_closed)
    ):
        return None
    hi_reach = u1.e + d1.hi
    if hi_reach < landing.lo or (
        hi_reach == landing.lo and not (d1.right_closed and landing.left_closed)
    ):
        return None
    tau = iv.intersect(iv.mdiff(landing, d1), tau1)
    if tau is None:
        return None
    delta = iv.msum(d1, u2.delta)
    b = max(u1.b, u2.b - d1.lo)
    e = min(u1.e, u2.e - d1.hi)
    # With uniform delimiters the whole window is admissible (join theorem);
    # mixing open and closed operands can leave a window endpoint whose slice
    # is empty because its only point sits on a crop line with a delimiter the
    # tuple cannot carry.  Clip to the admissible times: only crop-line points
    # are affected, which is the representation's documented boundary gap.
    ok = admissible_window(delta, b, e)
    if ok is None:
        return None
    tau = iv.intersect(tau, ok)
    if tau is None:
        return None
    result = CTuple(u1.n1, u2.n2, tau, delta, b, e)
    if not ctuple_valid(result):
        raise InvalidTupleError(f"join produced an invalid tuple: {render_tuple(result)}")
    return result


def _join_c_sets(A, B) -> set:
    buckets = _bucket_by_n1(B)
    out = set()
    for u1 in A:
        for u2 in buckets.get(u1.n2, ()):
            joined = join_c(u1, u2)
            if joined is not None:
                out.add(joined)
    return out


def _uncropped(n1: str, n2: str, tau: Interval, delta: Interval = _ZERO) -> CTuple:
    return CTuple(n1, n2, tau, delta, tau.lo, tau.hi)


def eval_c(G: TemporalGraph, q: q_.Trpq, options: Optional[EvalOptions] = None) -> AnswerSet:
    """Inductive evaluation with cropped rectangles; finite over both modes."""
    opts = _options(options)
    q = q_.adapt_query(q, G.discrete)
    nodes = sorted(graph_nodes(G))
    return AnswerSet("c", G.mode, _eval_c(G, q, nodes, opts))


def _eval_c(G, q, nodes, opts) -> set:
    domain = G.domain
    if isinstance(q, q_.Label):
        return {
            _uncropped(s, o, tau)
            for s, o, validity in G.triples_with_label(q.name)
            for tau in validity
        }
    if isinstance(q, q_.Inverse):
        return {
            CTuple(u.n2, u.n1, u.tau, u.delta, u.b, u.e)
            for u in _eval_c(G, q.edge, nodes, opts)
        }
    if isinstance(q, q_.Pred):
        matching = [q.target] if q.equals else [n for n in nodes if n != q.target]
        return {_uncropped(n, n, domain) for n in matching}
    if isinstance(q, q_.LeqTime):
        window = _leq_window(domain, q.bound)
        if window is None:
            return set()
        return {_uncropped(n, n, window) for n in nodes}
    if isinstance(q, q_.TimeNav):
        out = set()
        for n in nodes:
            seed1 = _uncropped(n, n, domain, q.delta)
            seed2 = _uncropped(n, n, domain)
            joined = join_c(seed1, seed2)
            if joined is not None:
                out.add(joined)
        return out
    if isinstance(q, q_.Test):
        return {
            _uncropped(u.n1, u.n1, u.tau) for u in _eval_c(G, q.inner, nodes, opts)
        }
    if isinstance(q, q_.Not):
        inner = _eval_c(G, q.inner, nodes, opts)
        out = set()
        for n in nodes:
            for gap in _node_gaps(inner, n, domain, G.discrete):
                out.add(_uncropped(n, n, gap))
        return out
    if isinstance(q, q_.Join):
        return _join_c_sets(_eval_c(G, q.lhs, nodes, opts), _eval_c(G, q.rhs, nodes, opts))
    if isinstance(q, q_.Union):
        return _eval_c(G, q.lhs, nodes, opts) | _eval_c(G, q.rhs, nodes, opts)
    if isinstance(q, q_.Repeat):
        base = _eval_c(G, q.inner, nodes, opts)
        identity = {_uncropped(n, n, domain) for n in nodes}
        return _repeat_sets(base, q.m, q.n, identity, _join_c_sets, opts.max_iterations)
    raise TypeError(f"not a query node: {q!r}")


EVALUATORS = {"t": eval_t, "d": eval_d, "td": eval_td, "c": eval_c}
