"""Temporal graph model and its flat-file loader.

A graph is a bounded effective temporal domain plus a finite map from triples
(subject, predicate, object) to coalesced sets of validity intervals.  The
file format is line-oriented UTF-8; see :func:`load_graph`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import intervals as iv
from .errors import EmptyIntervalError, GraphParseError, IntervalDomainError
from .intervals import Interval

DISCRETE = "discrete"
DENSE = "dense"

Triple = tuple[str, str, str]

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INTERVAL_TOKEN_RE = re.compile(
    r"[\[(]\s*-?\d+(?:/\d+|\.\d+)?\s*,\s*-?\d+(?:/\d+|\.\d+)?\s*[\])]"
)


@dataclass(frozen=True, eq=False)
class TemporalGraph:
    mode: str
    domain: Interval
    facts: dict[Triple, tuple[Interval, ...]] = field(default_factory=dict)

    @property
    def discrete(self) -> bool:
        return self.mode == DISCRETE

    def val(self, s: str, p: str, o: str) -> tuple[Interval, ...]:
        return self.facts.get((s, p, o), ())

    def triples_with_label(self, label: str):
        for (s, p, o), validity in self.facts.items():
            if p == label:
                yield s, o, validity


def graph_nodes(g: TemporalGraph) -> frozenset[str]:
    """All subjects and objects appearing in the graph's facts."""
    out = set()
    for s, _, o in g.facts:
        out.add(s)
        out.add(o)
    return frozenset(out)


def _check_identifier(token: str, line_no: int, what: str) -> str:
    if not _IDENT_RE.fullmatch(token):
        raise GraphParseError(f"invalid {what} identifier {token!r}", line=line_no)
    return token


def _parse_intervals(rest: str, line_no: int, offset: int) -> list[Interval]:
    found = []
    cursor = 0
    for m in _INTERVAL_TOKEN_RE.finditer(rest):
        between = rest[cursor : m.start()]
        if between.strip() not in ("", ","):
            raise GraphParseError(
                f"unexpected text {between.strip()!r} in interval list",
                line=line_no,
                column=offset + cursor + 1,
            )
        found.append(iv.parse_interval(m.group(0)))
        cursor = m.end()
    if rest[cursor:].strip():
        raise GraphParseError(
            f"unexpected trailing text {rest[cursor:].strip()!r}",
            line=line_no,
            column=offset + cursor + 1,
        )
    if not found:
        raise GraphParseError("expected at least one validity interval", line=line_no)
    return found


def load_graph(text: str) -> TemporalGraph:
    """Parse and validate a graph document.

    Format: two header lines ``mode <discrete|dense>`` and
    ``domain <interval>`` (either order), then one line per fact::

        <subject> <predicate> <object> <interval>(, <interval>)*

    Lines starting with ``#`` are comments; blank lines are ignored.
    Validity sets are coalesced at load, and every interval must be contained
    in the domain.
    """
    mode: str | None = None
    domain: Interval | None = None
    raw_facts: dict[Triple, list[Interval]] = {}
    fact_lines: list[tuple[int, str]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "mode":
            if mode is not None:
                raise GraphParseError("duplicate mode header", line=line_no)
            value = rest.strip()
            if value not in (DISCRETE, DENSE):
                raise GraphParseError(f"unknown mode {value!r}", line=line_no)
            mode = value
            continue
        if head == "domain":
            if domain is not None:
                raise GraphParseError("duplicate domain header", line=line_no)
            try:
                domain = iv.parse_interval(rest)
            except EmptyIntervalError as exc:
                raise GraphParseError(f"bad domain: {exc}", line=line_no) from exc
            continue
        if mode is None or domain is None:
            raise GraphParseError(
                "mode and domain headers must precede facts", line=line_no
            )
        fact_lines.append((line_no, line))

    if mode is None:
        raise GraphParseError("missing mode header")
    if domain is None:
        raise GraphParseError("missing domain header")
    discrete = mode == DISCRETE
    if discrete:
        try:
            domain = iv.normalize_discrete(domain)
        except EmptyIntervalError as exc:
            raise GraphParseError(f"domain is empty over discrete time: {exc}") from exc

    for line_no, line in fact_lines:
        parts = line.split(None, 3)
        if len(parts) < 4:
            raise GraphParseError(
                "expected: <subject> <predicate> <object> <interval>...", line=line_no
            )
        s, p, o, rest = parts
        triple = (
            _check_identifier(s, line_no, "subject"),
            _check_identifier(p, line_no, "predicate"),
            _check_identifier(o, line_no, "object"),
        )
        for interval in _parse_intervals(rest, line_no, line.rfind(rest)):
            if discrete:
                try:
                    interval = iv.normalize_discrete(interval)
                except EmptyIntervalError as exc:
                    raise GraphParseError(str(exc), line=line_no) from exc
            if not iv.covers(domain, interval):
                raise GraphParseError(
                    f"interval {interval} of triple ({s}, {p}, {o}) "
                    f"is not contained in the domain {domain}",
                    line=line_no,
                )
            raw_facts.setdefault(triple, []).append(interval)

    facts = {
        triple: iv.coalesce(vals, discrete=discrete)
        for triple, vals in sorted(raw_facts.items())
    }
    return TemporalGraph(mode=mode, domain=domain, facts=facts)


def serialize_graph(g: TemporalGraph) -> str:
    """Canonical textual form; load -> serialize -> load is a fixpoint."""
    lines = [f"mode {g.mode}", f"domain {iv.format_interval(g.domain)}"]
    for (s, p, o), validity in sorted(g.facts.items()):
        rendered = ", ".join(iv.format_interval(x) for x in validity)
        lines.append(f"{s} {p} {o} {rendered}")
    return "\n".join(lines) + "\n"


def graphs_equal(a: TemporalGraph, b: TemporalGraph) -> bool:
    return a.mode == b.mode and a.domain == b.domain and a.facts == b.facts


def scale_graph(g: TemporalGraph, factor: int, *, include_domain: bool = False) -> TemporalGraph:
    """Multiply every validity-interval endpoint by ``factor``.

    The effective domain is scaled only when ``include_domain`` is set; sweep
    harnesses keep it fixed so that scaled validity stays inside it.
    """
    if factor < 1:
        raise ValueError("scale factor must be a positive integer")

    def scale(interval: Interval) -> Interval:
        return Interval(
            interval.lo * factor,
            interval.hi * factor,
            interval.left_closed,
            interval.right_closed,
        )

    domain = scale(g.domain) if include_domain else g.domain
    facts = {}
    for triple, validity in g.facts.items():
        scaled = []
        for interval in validity:
            interval = scale(interval)
            if not iv.covers(domain, interval):
                raise IntervalDomainError(
                    f"scaled interval {interval} of {triple} leaves the domain {domain}"
                )
            scaled.append(interval)
        facts[triple] = iv.coalesce(scaled, discrete=g.discrete)
    return TemporalGraph(mode=g.mode, domain=domain, facts=facts)
