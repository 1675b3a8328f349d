"""Exact arithmetic on time points and delimited intervals.

Time points are exact numbers: plain ``int`` over discrete time, arbitrary
precision ``fractions.Fraction`` over dense time (never floats, so boundary
arithmetic in tests and golden values stays exact).  An :class:`Interval` is
bounded, nonempty and delimiter-aware.  Discrete-time callers normalise to
closed integer bounds with :func:`normalize_discrete`; over the integers every
nonempty interval has that form, which makes equality and coalescing canonical.

>>> msum(closed(100, 101), closed(3, 5))
Interval(103, 106)
>>> mdiff(closed(6, 8), closed(3, 5))
Interval(1, 5)
>>> intersect(closed(0, 2), closed(3, 5)) is None
True
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import EmptyIntervalError, IntervalDomainError, ModeError

Number = int | Fraction

_NUMBER_RE = re.compile(r"-?\d+(?:/\d+|\.\d+)?")
_INTERVAL_RE = re.compile(
    r"\s*([\[(])\s*(-?\d+(?:/\d+|\.\d+)?)\s*,\s*(-?\d+(?:/\d+|\.\d+)?)\s*([\])])\s*"
)


def parse_number(text: str) -> Number:
    """Parse an exact number: integer, ``p/q`` rational, or decimal literal."""
    text = text.strip()
    if "/" in text or "." in text:
        value = Fraction(text)
        return int(value) if value.denominator == 1 else value
    return int(text)


def format_number(x: Number) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def is_integral(x: Number) -> bool:
    return isinstance(x, int) or x.denominator == 1


@dataclass(frozen=True, slots=True)
class Interval:
    """A bounded, nonempty interval with per-side delimiters."""

    lo: Number
    hi: Number
    left_closed: bool = True
    right_closed: bool = True

    def __post_init__(self):
        if self.lo > self.hi or (self.lo == self.hi and not (self.left_closed and self.right_closed)):
            raise EmptyIntervalError(f"empty interval {_render(self)}")

    def __repr__(self):
        if self.left_closed and self.right_closed:
            return f"Interval({self.lo!r}, {self.hi!r})"
        return f"Interval.parse({_render(self)!r})"

    def __str__(self):
        return _render(self)

    def __contains__(self, t: Number) -> bool:
        return contains(self, t)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    @staticmethod
    def parse(text: str) -> "Interval":
        return parse_interval(text)


def _render(iv: Interval) -> str:
    left = "[" if iv.left_closed else "("
    right = "]" if iv.right_closed else ")"
    return f"{left}{format_number(iv.lo)},{format_number(iv.hi)}{right}"


def format_interval(iv: Interval) -> str:
    return _render(iv)


def parse_interval(text: str) -> Interval:
    m = _INTERVAL_RE.fullmatch(text)
    if m is None:
        raise EmptyIntervalError(f"not an interval literal: {text!r}")
    left, lo, hi, right = m.groups()
    return Interval(parse_number(lo), parse_number(hi), left == "[", right == "]")


def closed(lo: Number, hi: Number) -> Interval:
    return Interval(lo, hi, True, True)


def point(v: Number) -> Interval:
    return Interval(v, v, True, True)


def contains(iv: Interval, t: Number) -> bool:
    """Membership respecting delimiters."""
    if t < iv.lo or (t == iv.lo and not iv.left_closed):
        return False
    if t > iv.hi or (t == iv.hi and not iv.right_closed):
        return False
    return True


def covers(outer: Interval, inner: Interval) -> bool:
    """Set containment ``inner`` within ``outer``, respecting delimiters."""
    if inner.lo < outer.lo or (inner.lo == outer.lo and inner.left_closed and not outer.left_closed):
        return False
    if inner.hi > outer.hi or (inner.hi == outer.hi and inner.right_closed and not outer.right_closed):
        return False
    return True


def shift(iv: Interval, d: Number) -> Interval:
    """Pointwise translation: {t + d | t in iv}; delimiters preserved."""
    return Interval(iv.lo + d, iv.hi + d, iv.left_closed, iv.right_closed)


def msum(a: Interval, b: Interval) -> Interval:
    """Minkowski sum {x + y | x in a, y in b}.

    Each resulting delimiter is closed iff both contributing delimiters are.
    """
    return Interval(
        a.lo + b.lo,
        a.hi + b.hi,
        a.left_closed and b.left_closed,
        a.right_closed and b.right_closed,
    )


def mdiff(a: Interval, b: Interval) -> Interval:
    """Minkowski difference {x - y | x in a, y in b}."""
    return Interval(
        a.lo - b.hi,
        a.hi - b.lo,
        a.left_closed and b.right_closed,
        a.right_closed and b.left_closed,
    )


def intersect(a: Interval, b: Interval) -> Optional[Interval]:
    """Set intersection; ``None`` signals the empty result.

    At shared endpoints the tighter (open) delimiter wins.
    """
    if a.lo > b.lo or (a.lo == b.lo and not a.left_closed):
        lo, lc = a.lo, a.left_closed
    else:
        lo, lc = b.lo, b.left_closed
    if lo == a.lo == b.lo:
        lc = a.left_closed and b.left_closed
    if a.hi < b.hi or (a.hi == b.hi and not a.right_closed):
        hi, rc = a.hi, a.right_closed
    else:
        hi, rc = b.hi, b.right_closed
    if hi == a.hi == b.hi:
        rc = a.right_closed and b.right_closed
    if lo > hi or (lo == hi and not (lc and rc)):
        return None
    return Interval(lo, hi, lc, rc)


def hull(a: Interval, b: Interval) -> Interval:
    """Smallest interval containing both operands."""
    if a.lo < b.lo or (a.lo == b.lo and a.left_closed):
        lo, lc = a.lo, a.left_closed
    else:
        lo, lc = b.lo, b.left_closed
    if lo == a.lo == b.lo:
        lc = a.left_closed or b.left_closed
    if a.hi > b.hi or (a.hi == b.hi and a.right_closed):
        hi, rc = a.hi, a.right_closed
    else:
        hi, rc = b.hi, b.right_closed
    if hi == a.hi == b.hi:
        rc = a.right_closed or b.right_closed
    return Interval(lo, hi, lc, rc)


def union_is_interval(a: Interval, b: Interval, *, discrete: bool) -> bool:
    """True when the set union of the two intervals is itself an interval.

    Over the integers, touching closed intervals like [1,2] and [3,4] merge
    because {1,2,3,4} is an interval of Z.
    """
    if discrete:
        a, b = normalize_discrete(a), normalize_discrete(b)
        if a.lo > b.lo:
            a, b = b, a
        return b.lo <= a.hi + 1
    if a.lo > b.lo or (a.lo == b.lo and not a.left_closed and b.left_closed):
        a, b = b, a
    if b.lo < a.hi:
        return True
    if b.lo == a.hi and (a.right_closed or b.left_closed):
        return True
    return False


def sort_key(iv: Interval):
    return (iv.lo, not iv.left_closed, iv.hi, not iv.right_closed)


def coalesce(items: Iterable[Interval], *, discrete: bool) -> tuple[Interval, ...]:
    """The unique minimal canonical set of intervals with the same union.

    Output is pairwise disjoint, non-adjacent and sorted by lower bound;
    idempotent and invariant under input order.  O(n log n).
    """
    if discrete:
        items = [normalize_discrete(iv) for iv in items]
    ordered = sorted(items, key=sort_key)
    out: list[Interval] = []
    for iv in ordered:
        if out and union_is_interval(out[-1], iv, discrete=discrete):
            out[-1] = hull(out[-1], iv)
        else:
            out.append(iv)
    return tuple(out)


def complement(items: Iterable[Interval], bound: Interval, *, discrete: bool) -> tuple[Interval, ...]:
    """Maximal intervals whose union is ``bound`` minus the union of ``items``.

    Every input interval must be contained in ``bound``.
    """
    if discrete:
        bound = normalize_discrete(bound)
    items = list(items)
    for iv in items:
        chk = normalize_discrete(iv) if discrete else iv
        if not covers(bound, chk):
            raise IntervalDomainError(f"{_render(iv)} is not contained in {_render(bound)}")
    merged = coalesce(items, discrete=discrete)
    gaps: list[Interval] = []
    if discrete:
        cursor = bound.lo
        for iv in merged:
            if cursor <= iv.lo - 1:
                gaps.append(closed(cursor, iv.lo - 1))
            cursor = iv.hi + 1
        if cursor <= bound.hi:
            gaps.append(closed(cursor, bound.hi))
        return tuple(gaps)
    cur_lo, cur_lc = bound.lo, bound.left_closed
    for iv in merged:
        if cur_lo < iv.lo or (cur_lo == iv.lo and cur_lc and not iv.left_closed):
            gaps.append(Interval(cur_lo, iv.lo, cur_lc, not iv.left_closed))
        cur_lo, cur_lc = iv.hi, not iv.right_closed
    if cur_lo < bound.hi or (cur_lo == bound.hi and cur_lc and bound.right_closed):
        gaps.append(Interval(cur_lo, bound.hi, cur_lc, bound.right_closed))
    return tuple(gaps)


def normalize_discrete(iv: Interval) -> Interval:
    """Canonical closed-closed integer form of ``iv`` over discrete time.

    Open bounds move inward by one; fractional bounds round inward.  Raises
    :class:`EmptyIntervalError` when no integer survives, e.g. (0,1) over Z.
    """
    lo, hi = iv.lo, iv.hi
    if is_integral(lo):
        lo = int(lo) + (0 if iv.left_closed else 1)
    else:
        lo = math.ceil(lo)
    if is_integral(hi):
        hi = int(hi)
        if not iv.right_closed:
            hi -= 1
    else:
        hi = math.floor(hi)
    if lo > hi:
        raise EmptyIntervalError(f"interval {_render(iv)} is empty over discrete time")
    return Interval(lo, hi, True, True)


def is_discrete_canonical(iv: Interval) -> bool:
    return (
        isinstance(iv.lo, int)
        and isinstance(iv.hi, int)
        and iv.left_closed
        and iv.right_closed
    )


def iter_points(iv: Interval) -> range:
    """Integer points of a discrete-canonical interval, in increasing order."""
    if not is_discrete_canonical(iv):
        raise ModeError(f"cannot enumerate points of non-canonical interval {_render(iv)}")
    return range(iv.lo, iv.hi + 1)
