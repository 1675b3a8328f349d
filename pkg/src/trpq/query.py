"""Query abstract syntax and concrete-syntax parser.

Concrete syntax (EBNF, also shipped in the README):

    query    = union ;
    union    = join { "+" join } ;
    join     = postfix { "/" postfix } ;
    postfix  = atom { "^-" | "[" nat "," ( nat | "_" ) "]" } ;
    atom     = timenav | label | test | negation | predicate
             | timebound | "(" query ")" ;
    timenav  = "T" interval ;                      (* stay on a node, move in time *)
    test     = "?(" query ")" ;
    negation = "!(" nodeform ")" ;                 (* nodeform: predicate, timebound,
                                                      test or negation *)
    predicate = "(" ( "=" | "!=" ) name ")" ;
    timebound = "(" "<=" number ")" ;
    interval = ( "[" | "(" ) number "," number ( "]" | ")" ) ;

Postfix operators bind tightest, then "/", then "+"; parentheses override.
Inverse ``^-`` applies to edge expressions only (labels and their inverses),
and negation applies to node filters only, mirroring the query grammar.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Union as TUnion

from . import intervals as iv
from .errors import EmptyIntervalError, QueryParseError
from .intervals import Interval, Number


@dataclass(frozen=True, slots=True)
class Label:
    name: str


@dataclass(frozen=True, slots=True)
class Inverse:
    edge: "Trpq"


@dataclass(frozen=True, slots=True)
class Pred:
    equals: bool
    target: str


@dataclass(frozen=True, slots=True)
class LeqTime:
    bound: Number


@dataclass(frozen=True, slots=True)
class TimeNav:
    delta: Interval


@dataclass(frozen=True, slots=True)
class Test:
    __test__ = False  # keep pytest collection away from this AST node

    inner: "Trpq"


@dataclass(frozen=True, slots=True)
class Not:
    inner: "Trpq"


@dataclass(frozen=True, slots=True)
class Join:
    lhs: "Trpq"
    rhs: "Trpq"


@dataclass(frozen=True, slots=True)
class Union:
    lhs: "Trpq"
    rhs: "Trpq"


@dataclass(frozen=True, slots=True)
class Repeat:
    inner: "Trpq"
    m: int
    n: Optional[int]  # None means unbounded ("_")


Trpq = TUnion[Label, Inverse, Pred, LeqTime, TimeNav, Test, Not, Join, Union, Repeat]


def is_edge_form(q: Trpq) -> bool:
    return isinstance(q, (Label, Inverse))


def is_node_form(q: Trpq) -> bool:
    return isinstance(q, (Pred, LeqTime, Test, Not))


def power(q: Trpq, k: int) -> Trpq:
    """k-fold self-join, left-nested: power(q, 3) = Join(Join(q, q), q).

    k = 0 is rejected; the repetition operator handles the zero case through
    the node-identity relation instead.
    """
    if k < 1:
        raise ValueError("power requires k >= 1")
    out = q
    for _ in range(k - 1):
        out = Join(out, q)
    return out


# --- lexer -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+|\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<inv>\^-)
  | (?P<neq>!=)
  | (?P<leq><=)
  | (?P<sym>[/+()\[\],=?!-])
    """,
    re.VERBOSE,
)

_SYMBOL_KINDS = {"inv": "^-", "neq": "!=", "leq": "<="}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QueryParseError(f"unexpected character {text[pos]!r}", position=pos)
        kind = m.lastgroup
        if kind != "ws":
            if kind in _SYMBOL_KINDS:
                tokens.append((_SYMBOL_KINDS[kind], m.group(0), pos))
            elif kind == "sym":
                tokens.append((m.group(0), m.group(0), pos))
            else:
                tokens.append((kind, m.group(0), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        if tok[0] != "end":
            self.index += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise QueryParseError(
                f"expected {kind!r}, got {tok[1] or 'end of input'!r}", position=tok[2]
            )
        return tok

    def fail(self, message: str):
        tok = self.peek()
        raise QueryParseError(message, position=tok[2])

    # union < join < postfix < atom
    def parse_query(self) -> Trpq:
        node = self.parse_join()
        while self.peek()[0] == "+":
            self.next()
            node = Union(node, self.parse_join())
        return node

    def parse_join(self) -> Trpq:
        node = self.parse_postfix()
        while self.peek()[0] == "/":
            self.next()
            node = Join(node, self.parse_postfix())
        return node

    def parse_postfix(self) -> Trpq:
        node = self.parse_atom()
        while True:
            kind = self.peek()[0]
            if kind == "^-":
                tok = self.next()
                if not is_edge_form(node):
                    raise QueryParseError(
                        "inverse ^- applies only to edge expressions", position=tok[2]
                    )
                node = Inverse(node)
            elif kind == "[":
                node = self.parse_repeat(node)
            else:
                return node

    def parse_repeat(self, inner: Trpq) -> Repeat:
        self.expect("[")
        m = self.parse_nat()
        self.expect(",")
        kind, value, pos = self.peek()
        if kind == "name" and value == "_":
            self.next()
            n = None
        else:
            n = self.parse_nat()
            if m > n:
                raise QueryParseError(f"repeat bounds {m} > {n}", position=pos)
        self.expect("]")
        return Repeat(inner, m, n)

    def parse_nat(self) -> int:
        kind, value, pos = self.next()
        if kind != "number" or not value.isdigit():
            raise QueryParseError(f"expected a natural number, got {value!r}", position=pos)
        return int(value)

    def parse_number(self) -> Number:
        negative = False
        if self.peek()[0] == "-":
            self.next()
            negative = True
        tok = self.expect("number")
        value = iv.parse_number(tok[1])
        return -value if negative else value

    def parse_interval(self) -> Interval:
        open_tok = self.next()
        if open_tok[0] not in ("[", "("):
            raise QueryParseError("expected an interval", position=open_tok[2])
        lo = self.parse_number()
        self.expect(",")
        hi = self.parse_number()
        close_tok = self.next()
        if close_tok[0] not in ("]", ")"):
            raise QueryParseError("expected ']' or ')'", position=close_tok[2])
        try:
            return Interval(lo, hi, open_tok[0] == "[", close_tok[0] == "]")
        except EmptyIntervalError as exc:
            raise QueryParseError(str(exc), position=open_tok[2]) from exc

    def parse_atom(self) -> Trpq:
        kind, value, pos = self.peek()
        if kind == "name":
            if value == "T" and self.peek(1)[0] in ("[", "("):
                self.next()
                return TimeNav(self.parse_interval())
            self.next()
            return Label(value)
        if kind == "?":
            self.next()
            self.expect("(")
            inner = self.parse_query()
            self.expect(")")
            return Test(inner)
        if kind == "!":
            self.next()
            self.expect("(")
            inner = self.parse_node_form()
            self.expect(")")
            return Not(inner)
        if kind == "(":
            nxt = self.peek(1)[0]
            if nxt in ("=", "!=", "<="):
                self.next()
                return self.parse_predicate_body()
            self.next()
            inner = self.parse_query()
            self.expect(")")
            return inner
        self.fail(f"expected a query atom, got {value or 'end of input'!r}")

    def parse_predicate_body(self) -> Trpq:
        """Body of a predicate form, after its opening parenthesis."""
        node = self.parse_predicate_inline()
        self.expect(")")
        return node

    def parse_predicate_inline(self) -> Trpq:
        kind, _, pos = self.next()
        if kind == "=":
            return Pred(True, self.expect("name")[1])
        if kind == "!=":
            return Pred(False, self.expect("name")[1])
        if kind == "<=":
            return LeqTime(self.parse_number())
        raise QueryParseError("expected '=', '!=' or '<='", position=pos)

    def parse_node_form(self) -> Trpq:
        kind = self.peek()[0]
        if kind in ("=", "!=", "<="):
            # convenience: !(=X) without the inner parentheses
            return self.parse_predicate_inline()
        node = self.parse_atom()
        if not is_node_form(node):
            self.fail("negation !() applies only to node filters")
        return node


def parse_query(text: str) -> Trpq:
    parser = _Parser(text)
    node = parser.parse_query()
    tok = parser.peek()
    if tok[0] != "end":
        raise QueryParseError(f"unexpected trailing input {tok[1]!r}", position=tok[2])
    return node


# --- printer ---------------------------------------------------------------

_PREC_UNION, _PREC_JOIN, _PREC_POSTFIX, _PREC_ATOM = 1, 2, 3, 4


def _prec(q: Trpq) -> int:
    if isinstance(q, Union):
        return _PREC_UNION
    if isinstance(q, Join):
        return _PREC_JOIN
    if isinstance(q, (Repeat, Inverse)):
        return _PREC_POSTFIX
    return _PREC_ATOM


def _fmt(q: Trpq, required: int) -> str:
    if isinstance(q, Label):
        body = q.name
    elif isinstance(q, Inverse):
        body = _fmt(q.edge, _PREC_POSTFIX) + "^-"
    elif isinstance(q, Pred):
        body = f"(={q.target})" if q.equals else f"(!={q.target})"
    elif isinstance(q, LeqTime):
        body = f"(<={iv.format_number(q.bound)})"
    elif isinstance(q, TimeNav):
        body = "T" + iv.format_interval(q.delta)
    elif isinstance(q, Test):
        body = f"?({_fmt(q.inner, _PREC_UNION)})"
    elif isinstance(q, Not):
        body = f"!({_fmt(q.inner, _PREC_UNION)})"
    elif isinstance(q, Join):
        body = _fmt(q.lhs, _PREC_JOIN) + "/" + _fmt(q.rhs, _PREC_POSTFIX)
    elif isinstance(q, Union):
        body = _fmt(q.lhs, _PREC_UNION) + " + " + _fmt(q.rhs, _PREC_JOIN)
    elif isinstance(q, Repeat):
        upper = "_" if q.n is None else str(q.n)
        body = f"{_fmt(q.inner, _PREC_POSTFIX)}[{q.m},{upper}]"
    else:  # pragma: no cover
        raise TypeError(f"not a query node: {q!r}")
    if _prec(q) < required:
        return f"({body})"
    return body


def format_query(q: Trpq) -> str:
    """Canonical rendering; parse(format_query(q)) == q."""
    return _fmt(q, _PREC_UNION)


# --- mode adaptation and scaling -------------------------------------------


def adapt_query(q: Trpq, discrete: bool) -> Trpq:
    """Normalise query intervals for the graph's temporal mode.

    Over discrete time, temporal-navigation intervals take their canonical
    closed integer form and time bounds round down to integers; an interval
    with no integer point (for example ``T(0,1)``) is rejected.
    """
    if not discrete:
        return q
    if isinstance(q, TimeNav):
        return TimeNav(iv.normalize_discrete(q.delta))
    if isinstance(q, LeqTime):
        bound = q.bound if iv.is_integral(q.bound) else math.floor(q.bound)
        return LeqTime(int(bound))
    if isinstance(q, Inverse):
        return Inverse(adapt_query(q.edge, discrete))
    if isinstance(q, Test):
        return Test(adapt_query(q.inner, discrete))
    if isinstance(q, Not):
        return Not(adapt_query(q.inner, discrete))
    if isinstance(q, Join):
        return Join(adapt_query(q.lhs, discrete), adapt_query(q.rhs, discrete))
    if isinstance(q, Union):
        return Union(adapt_query(q.lhs, discrete), adapt_query(q.rhs, discrete))
    if isinstance(q, Repeat):
        return Repeat(adapt_query(q.inner, discrete), q.m, q.n)
    return q


def scale_query(q: Trpq, factor: int) -> Trpq:
    """Multiply every interval endpoint and time bound in the query by ``factor``."""
    if factor < 1:
        raise ValueError("scale factor must be a positive integer")
    if isinstance(q, TimeNav):
        d = q.delta
        return TimeNav(Interval(d.lo * factor, d.hi * factor, d.left_closed, d.right_closed))
    if isinstance(q, LeqTime):
        return LeqTime(q.bound * factor)
    if isinstance(q, Inverse):
        return Inverse(scale_query(q.edge, factor))
    if isinstance(q, Test):
        return Test(scale_query(q.inner, factor))
    if isinstance(q, Not):
        return Not(scale_query(q.inner, factor))
    if isinstance(q, Join):
        return Join(scale_query(q.lhs, factor), scale_query(q.rhs, factor))
    if isinstance(q, Union):
        return Union(scale_query(q.lhs, factor), scale_query(q.rhs, factor))
    if isinstance(q, Repeat):
        return Repeat(scale_query(q.inner, factor), q.m, q.n)
    return q
