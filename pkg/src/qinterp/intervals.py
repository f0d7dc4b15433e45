"""Exact rational intervals and finite unions of them.

Endpoints are :class:`fractions.Fraction` values or one of the two
sentinels :data:`NEG_INF` / :data:`POS_INF`.  Infinite endpoints are
always open.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __ge__(self, other):
        return self == other or self > other

    def __neg__(self):
        return POS_INF if self.sign < 0 else NEG_INF


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(1)

ExtRat = Union[Fraction, _Infinity]


def is_finite(x) -> bool:
    return not isinstance(x, _Infinity)


def as_rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or 'p/q' strings")
    return Fraction(x)


def as_ext(x) -> ExtRat:
    if isinstance(x, _Infinity):
        return x
    if isinstance(x, str) and x.strip() in ("inf", "+inf", "-inf"):
        return NEG_INF if x.strip().startswith("-") else POS_INF
    return as_rat(x)


def fmt_ext(x: ExtRat) -> str:
    return str(x)


@dataclass(frozen=True)
class Interval:
    lo: ExtRat
    hi: ExtRat
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        lo, hi = as_ext(self.lo), as_ext(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if (not is_finite(lo) and self.lo_closed) or (not is_finite(hi) and self.hi_closed):
            raise ValueError("infinite endpoints cannot be closed")
        if lo > hi or (lo == hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval {lo!s},{hi!s}")

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x, True, True)

    @classmethod
    def line(cls) -> "Interval":
        return cls(NEG_INF, POS_INF)

    @staticmethod
    def maybe(lo, hi, lo_closed=False, hi_closed=False) -> Optional["Interval"]:
        """Like the constructor but returns None for an empty interval."""
        lo, hi = as_ext(lo), as_ext(hi)
        lo_closed = lo_closed and is_finite(lo)
        hi_closed = hi_closed and is_finite(hi)
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            return None
        return Interval(lo, hi, lo_closed, hi_closed)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    @property
    def is_open(self) -> bool:
        return not self.lo_closed and not self.hi_closed

    def __contains__(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def interior(self) -> Optional["Interval"]:
        return Interval.maybe(self.lo, self.hi)

    def sample(self) -> Fraction:
        """A rational point of the interval, chosen deterministically."""
        lo, hi = self.lo, self.hi
        if self.is_point:
            return lo
        if not is_finite(lo) and not is_finite(hi):
            return Fraction(0)
        if not is_finite(lo):
            return hi - 1
        if not is_finite(hi):
            return lo + 1
        return (lo + hi) / 2

    def __str__(self):
        if self.is_point:
            return "{" + str(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo!s},{self.hi!s}{right}"


def _lo_key(iv: Interval):
    # closed-left intervals sort before open ones with the same endpoint
    return (iv.lo, 0 if iv.lo_closed else 1)


def _hi_greater(h1, c1, h2, c2) -> bool:
    return h1 > h2 or (h1 == h2 and c1 and not c2)


class IntervalSet:
    """A finite union of pairwise disjoint, non-mergeable intervals."""

    __slots__ = ("components",)

    def __init__(self, intervals: Iterable[Optional[Interval]] = ()):
        ivs = sorted((iv for iv in intervals if iv is not None), key=_lo_key)
        merged: list[Interval] = []
        for iv in ivs:
            if merged:
                cur = merged[-1]
                touches = iv.lo < cur.hi or (iv.lo == cur.hi and (cur.hi_closed or iv.lo_closed))
                if touches:
                    if _hi_greater(iv.hi, iv.hi_closed, cur.hi, cur.hi_closed):
                        merged[-1] = Interval(cur.lo, iv.hi, cur.lo_closed, iv.hi_closed)
                    continue
            merged.append(iv)
        self.components: tuple[Interval, ...] = tuple(merged)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls([Interval.line()])

    @classmethod
    def point(cls, x) -> "IntervalSet":
        return cls([Interval.point(x)])

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __contains__(self, x) -> bool:
        return any(x in iv for iv in self.components)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.components + other.components)

    def __invert__(self) -> "IntervalSet":
        out = []
        lo, lo_closed = NEG_INF, False
        for iv in self.components:
            out.append(Interval.maybe(lo, iv.lo, lo_closed, not iv.lo_closed))
            lo, lo_closed = iv.hi, not iv.hi_closed
        out.append(Interval.maybe(lo, POS_INF, lo_closed, False))
        return IntervalSet(out)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return ~(~self | ~other)

    def __sub__(self, other: "IntervalSet") -> "IntervalSet":
        return self & ~other

    def __le__(self, other: "IntervalSet") -> bool:
        return not (self - other)

    def isdisjoint(self, other: "IntervalSet") -> bool:
        return not (self & other)

    @property
    def is_full(self) -> bool:
        return self.components == (Interval.line(),)

    @property
    def inf(self) -> ExtRat:
        return self.components[0].lo

    @property
    def sup(self) -> ExtRat:
        return self.components[-1].hi

    def hull(self) -> Interval:
        """Smallest open interval containing the set (the set must be non-empty)."""
        return Interval.open(self.inf, self.sup)

    def interior(self) -> "IntervalSet":
        return IntervalSet(iv.interior() for iv in self.components)

    def sample(self) -> Fraction:
        return self.components[0].sample()

    def __repr__(self):
        return f"IntervalSet({str(self)!r})"

    def __str__(self):
        if not self.components:
            return "empty"
        return " u ".join(str(iv) for iv in self.components)


def strictly_left_of(a: IntervalSet, b: IntervalSet) -> bool:
    """Every point of ``a`` lies below every point of ``b`` (vacuous if either is empty)."""
    if not a or not b:
        return True
    last, first = a.components[-1], b.components[0]
    if last.hi < first.lo:
        return True
    return last.hi == first.lo and not (last.hi_closed and first.lo_closed)
