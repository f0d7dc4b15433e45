"""Finitely piecewise-affine weakly increasing maps Q -> Q.

A map is stored in canonical form as

* ``breaks``  -- strictly increasing rationals ``b_1 < ... < b_k``;
* ``laws``    -- ``k + 1`` affine laws ``(slope, offset)``; ``laws[j]`` is in
  force on the open interval between ``b_j`` and ``b_{j+1}`` (with
  ``b_0 = -inf``, ``b_{k+1} = +inf``);
* ``values``  -- the value taken exactly at each breakpoint.

A value at a breakpoint may agree with the left law, the right law, or
neither (an isolated value); this covers the half-open convention
``[b_i, b_{i+1})`` as well as left-closed pieces and singleton pieces.
A breakpoint is kept only if the laws on both sides differ or the value
there is not the common law's value, so equality of maps is equality of
canonical data.
"""
from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    DomainError,
    NotEpimorphism,
    NotInvertible,
    NotRepresentable,
    PinInconsistent,
)
from .intervals import NEG_INF, POS_INF, Interval, IntervalSet, as_ext, as_rat, is_finite

Law = tuple[Fraction, Fraction]

ONE = Fraction(1)
ZERO = Fraction(0)
IDENTITY_LAW: Law = (ONE, ZERO)


def _ev(law: Law, x) -> Fraction:
    return law[0] * x + law[1]


class MapClass(enum.Enum):
    IDENTITY = "Identity"
    AUTOMORPHISM = "Automorphism"
    EMBEDDING = "Embedding"
    EPIMORPHISM = "Epimorphism"
    GENERAL = "General"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PLMap:
    breaks: tuple
    laws: tuple
    values: tuple

    def __post_init__(self):
        breaks = tuple(as_rat(b) for b in self.breaks)
        laws = tuple((as_rat(s), as_rat(c)) for s, c in self.laws)
        values = tuple(as_rat(v) for v in self.values)
        if len(laws) != len(breaks) + 1 or len(values) != len(breaks):
            raise DomainError("need one more law than breakpoints and one value per breakpoint")
        if any(b1 >= b2 for b1, b2 in zip(breaks, breaks[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        if any(s < 0 for s, _ in laws):
            raise DomainError("slopes must be non-negative")
        for i, b in enumerate(breaks):
            if not _ev(laws[i], b) <= values[i] <= _ev(laws[i + 1], b):
                raise DomainError(f"map is not weakly increasing at {b}")
        # canonicalize: drop breakpoints that separate nothing
        cb, cl, cv = [], [laws[0]], []
        for i, b in enumerate(breaks):
            nxt = laws[i + 1]
            if nxt == cl[-1] and values[i] == _ev(nxt, b):
                continue
            cb.append(b)
            cv.append(values[i])
            cl.append(nxt)
        object.__setattr__(self, "breaks", tuple(cb))
        object.__setattr__(self, "laws", tuple(cl))
        object.__setattr__(self, "values", tuple(cv))

    # -- construction -------------------------------------------------

    @classmethod
    def identity(cls) -> "PLMap":
        return cls((), (IDENTITY_LAW,), ())

    @classmethod
    def affine(cls, slope, offset=0) -> "PLMap":
        return cls((), ((as_rat(slope), as_rat(offset)),), ())

    @classmethod
    def translation(cls, c) -> "PLMap":
        return cls.affine(1, c)

    @classmethod
    def from_evaluator(cls, breaks: Iterable, fn: Callable[[Fraction], Fraction]) -> "PLMap":
        """Build the map equal to ``fn``, given a superset of its breakpoints.

        ``fn`` must be affine on every open interval between consecutive
        entries of ``breaks``; the law there is read off from two samples.
        """
        bs = sorted(set(as_rat(b) for b in breaks))
        laws = []
        for j in range(len(bs) + 1):
            if not bs:
                p1, p2 = ZERO, ONE
            elif j == 0:
                p1, p2 = bs[0] - 2, bs[0] - 1
            elif j == len(bs):
                p1, p2 = bs[-1] + 1, bs[-1] + 2
            else:
                a, b = bs[j - 1], bs[j]
                p1, p2 = a + (b - a) / 3, a + 2 * (b - a) / 3
            y1, y2 = fn(p1), fn(p2)
            s = (y2 - y1) / (p2 - p1)
            laws.append((s, y1 - s * p1))
        return cls(tuple(bs), tuple(laws), tuple(fn(b) for b in bs))

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple[Interval, Fraction, Fraction]]) -> "PLMap":
        """Build a map from domain pieces that partition Q in left-to-right order."""
        if not pieces:
            raise DomainError("no pieces")
        first, last = pieces[0][0], pieces[-1][0]
        if is_finite(first.lo):
            raise DomainError("pieces leave (-inf, %s) uncovered" % first.lo)
        if is_finite(last.hi):
            raise DomainError("pieces leave (%s, inf) uncovered" % last.hi)
        for (a, _, _), (b, _, _) in zip(pieces, pieces[1:]):
            if a.hi != b.lo:
                kind = "overlap" if b.lo < a.hi else "gap"
                raise DomainError(f"pieces {a} and {b} {kind}")
            if a.hi_closed == b.lo_closed:
                raise DomainError(f"pieces {a} and {b} must meet with exactly one closed end")
        breaks = sorted({e for iv, _, _ in pieces for e in (iv.lo, iv.hi) if is_finite(e)})
        edges = [NEG_INF, *breaks, POS_INF]
        spans = [(iv, (as_rat(s), as_rat(c))) for iv, s, c in pieces]
        laws, values = [], []
        for j in range(len(breaks) + 1):
            lo, hi = edges[j], edges[j + 1]
            laws.append(next(law for iv, law in spans if not iv.is_point and iv.lo <= lo and hi <= iv.hi))
        for b in breaks:
            values.append(next(_ev(law, b) for iv, law in spans if b in iv))
        return cls(tuple(breaks), tuple(laws), tuple(values))

    @classmethod
    def interpolating(cls, points: Sequence[tuple], left_slope=1, right_slope=1) -> "PLMap":
        """The automorphism through strictly increasing ``(x, y)`` points."""
        pts = [(as_rat(x), as_rat(y)) for x, y in points]
        if any(x1 >= x2 or y1 >= y2 for (x1, y1), (x2, y2) in zip(pts, pts[1:])):
            raise DomainError("interpolation points must increase in both coordinates")
        if not pts:
            return cls.affine(left_slope, 0)
        xs = [x for x, _ in pts]
        ls, rs = as_rat(left_slope), as_rat(right_slope)

        def fn(x):
            i = bisect_right(xs, x)
            if i == 0:
                return pts[0][1] + ls * (x - pts[0][0])
            if i == len(pts):
                return pts[-1][1] + rs * (x - pts[-1][0])
            (x1, y1), (x2, y2) = pts[i - 1], pts[i]
            return y1 + (y2 - y1) * (x - x1) / (x2 - x1)

        return cls.from_evaluator(xs, fn)

    # -- evaluation ---------------------------------------------------

    def __call__(self, x) -> Fraction:
        i = bisect_left(self.breaks, x)
        if i < len(self.breaks) and self.breaks[i] == x:
            return self.values[i]
        return _ev(self.laws[i], x)

    def law_left(self, x) -> Law:
        """The law in force just below ``x``."""
        return self.laws[bisect_left(self.breaks, x)]

    def law_right(self, x) -> Law:
        """The law in force just above ``x``."""
        return self.laws[bisect_right(self.breaks, x)]

    def left_limit(self, x) -> Fraction:
        return _ev(self.law_left(x), x)

    def right_limit(self, x) -> Fraction:
        return _ev(self.law_right(x), x)

    def edges(self) -> list:
        return [NEG_INF, *self.breaks, POS_INF]

    @property
    def pieces(self) -> list[tuple[Interval, Fraction, Fraction]]:
        """Domain pieces; a breakpoint joins the right piece unless its value says otherwise."""
        attach = []
        for i, b in enumerate(self.breaks):
            v = self.values[i]
            if v == _ev(self.laws[i + 1], b):
                attach.append("right")
            elif v == _ev(self.laws[i], b):
                attach.append("left")
            else:
                attach.append("point")
        out = []
        edges = self.edges()
        for j, (s, c) in enumerate(self.laws):
            lo, hi = edges[j], edges[j + 1]
            lo_closed = j > 0 and attach[j - 1] == "right"
            hi_closed = j < len(self.breaks) and attach[j] == "left"
            out.append((Interval(lo, hi, lo_closed, hi_closed), s, c))
            if j < len(self.breaks) and attach[j] == "point":
                out.append((Interval.point(hi), ZERO, self.values[j]))
        return out

    @property
    def is_identity(self) -> bool:
        return not self.breaks and self.laws[0] == IDENTITY_LAW

    @property
    def is_injective(self) -> bool:
        return all(s > 0 for s, _ in self.laws)

    @property
    def is_surjective(self) -> bool:
        if self.laws[0][0] == 0 or self.laws[-1][0] == 0:
            return False
        return all(
            _ev(self.laws[i], b) == v == _ev(self.laws[i + 1], b)
            for i, (b, v) in enumerate(zip(self.breaks, self.values))
        )

    @property
    def has_coterminal_image(self) -> bool:
        return self.laws[0][0] > 0 and self.laws[-1][0] > 0

    def preimage(self, y) -> Optional[Fraction]:
        """The unique preimage of ``y`` under an injective map, or None."""
        if not self.is_injective:
            raise ValueError("preimage is only defined for injective maps")
        i = bisect_left(self.values, y)
        if i < len(self.values) and self.values[i] == y:
            return self.breaks[i]
        s, c = self.laws[i]
        x = (y - c) / s
        edges = self.edges()
        if edges[i] < x < edges[i + 1]:
            return x
        return None

    def __matmul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def __repr__(self):
        from .dsl import pretty_map

        return f"PLMap({pretty_map(self)!r})"

    def __str__(self):
        from .dsl import pretty_map

        return pretty_map(self)


def evaluate(f: PLMap, x) -> Fraction:
    return f(as_rat(x))


def compose(f: PLMap, g: PLMap) -> PLMap:
    """The map ``x -> f(g(x))``."""
    cands = set(g.breaks)
    edges = g.edges()
    for j, (s, c) in enumerate(g.laws):
        if s == 0:
            continue
        for beta in f.breaks:
            x = (beta - c) / s
            if edges[j] < x < edges[j + 1]:
                cands.add(x)
    return PLMap.from_evaluator(cands, lambda x: f(g(x)))


def classify(f: PLMap) -> MapClass:
    if f.is_identity:
        return MapClass.IDENTITY
    inj, surj = f.is_injective, f.is_surjective
    if inj and surj:
        return MapClass.AUTOMORPHISM
    if inj:
        return MapClass.EMBEDDING
    if surj:
        return MapClass.EPIMORPHISM
    return MapClass.GENERAL


def is_automorphism(f: PLMap) -> bool:
    return f.is_injective and f.is_surjective


def invert(f: PLMap) -> PLMap:
    if not is_automorphism(f):
        raise NotInvertible(f"{f} is not an automorphism ({classify(f)})")
    return PLMap.from_evaluator(f.values, f.preimage)


def conjugate(f: PLMap, g: PLMap) -> PLMap:
    """``g f g^-1``; its support is the image under ``g`` of the support of ``f``."""
    return compose(g, compose(f, invert(g)))


def image(f: PLMap) -> IntervalSet:
    parts = []
    edges = f.edges()
    for j, (s, c) in enumerate(f.laws):
        if s == 0:
            parts.append(Interval.point(c))
            continue
        lo, hi = edges[j], edges[j + 1]
        ylo = s * lo + c if is_finite(lo) else NEG_INF
        yhi = s * hi + c if is_finite(hi) else POS_INF
        parts.append(Interval.open(ylo, yhi))
    parts.extend(Interval.point(v) for v in f.values)
    return IntervalSet(parts)


def fixed_points(f: PLMap) -> IntervalSet:
    """``{x : f(x) = x}`` for any map (no class restriction)."""
    parts = []
    edges = f.edges()
    for j, (s, c) in enumerate(f.laws):
        lo, hi = edges[j], edges[j + 1]
        if s == 1:
            if c == 0:
                parts.append(Interval.open(lo, hi))
            continue
        x = c / (1 - s)
        if lo < x < hi:
            parts.append(Interval.point(x))
    parts.extend(Interval.point(b) for b, v in zip(f.breaks, f.values) if b == v)
    return IntervalSet(parts)


def support(f: PLMap) -> IntervalSet:
    return ~fixed_points(f)


def bump(lo, hi, parity: int = 1) -> PLMap:
    """Canonical bump with support ``(lo, hi)`` moving points up (parity +1) or down.

    Bounded supports use two pieces with slopes 2 and 1/2 meeting at
    ``(2lo + hi)/3 -> (lo + 2hi)/3``; half-lines use slope 2 or 1/2 at
    the finite end; the whole line uses a unit translation.
    """
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    lo, hi = as_ext(lo), as_ext(hi)
    if not lo < hi:
        raise ValueError("empty support")
    if not is_finite(lo) and not is_finite(hi):
        return PLMap.translation(parity)
    ident = (ONE, ZERO)
    if not is_finite(hi):
        s = Fraction(2) if parity > 0 else Fraction(1, 2)
        return PLMap((lo,), (ident, (s, lo - s * lo)), (lo,))
    if not is_finite(lo):
        s = Fraction(1, 2) if parity > 0 else Fraction(2)
        return PLMap((hi,), ((s, hi - s * hi), ident), (hi,))
    p, q = (2 * lo + hi) / 3, (lo + 2 * hi) / 3
    mx, my = (p, q) if parity > 0 else (q, p)
    s1, s2 = (my - lo) / (mx - lo), (hi - my) / (hi - mx)
    return PLMap((lo, mx, hi), (ident, (s1, lo - s1 * lo), (s2, hi - s2 * hi), ident), (lo, my, hi))


def splice(g: PLMap, span: Interval) -> PLMap:
    """The map equal to ``g`` on ``span`` and the identity elsewhere."""
    cuts = [e for e in (span.lo, span.hi) if is_finite(e)]
    return PLMap.from_evaluator([*g.breaks, *cuts], lambda x: g(x) if x in span else x)


# -- right inverses and factorization ---------------------------------


def _fiber(g: PLMap, y: Fraction) -> tuple[Fraction, Fraction]:
    """Least and greatest preimage of ``y`` under a surjective map."""
    edges = g.edges()
    i = bisect_left(g.values, y)
    s, c = g.laws[i]
    lo = None
    if s > 0:
        x = (y - c) / s
        if edges[i] < x < edges[i + 1]:
            lo = x
    if lo is None:
        lo = g.breaks[i]
    j = bisect_right(g.values, y)
    s, c = g.laws[j]
    hi = None
    if s > 0:
        x = (y - c) / s
        if edges[j] < x < edges[j + 1]:
            hi = x
    if hi is None:
        hi = g.breaks[j - 1]
    return lo, hi


def right_inverse(g: PLMap, pin: Optional[tuple] = None) -> PLMap:
    """An embedding ``f`` with ``g(f(y)) = y`` for all ``y``.

    On a flat of ``g`` the default choice is the flat's left endpoint;
    ``pin = (y, x)`` forces ``f(y) = x`` instead.
    """
    if not g.is_surjective:
        raise NotEpimorphism(f"{g} is not surjective")
    if pin is not None:
        py, px = as_rat(pin[0]), as_rat(pin[1])
        if g(px) != py:
            raise PinInconsistent(f"g({px}) = {g(px)}, not {py}")

    def fn(y):
        if pin is not None and y == py:
            return px
        return _fiber(g, y)[0]

    return PLMap.from_evaluator(set(g.values), fn)


@dataclass(frozen=True)
class _Gap:
    start: Fraction
    left: bool  # left gaps are [start, start+1), right gaps (start, start+1]
    frm: Fraction
    to: Fraction


def factorize(h: PLMap) -> tuple[PLMap, PLMap]:
    """Split ``h`` as ``g o f`` with ``f`` an embedding and ``g`` an epimorphism.

    ``f`` inserts a unit gap at every jump of ``h``; ``g`` follows ``h``
    on the image of ``f`` and sweeps each inserted gap affinely across
    the values ``h`` skips.  Returns ``(g, f)``.
    """
    if not h.has_coterminal_image:
        raise NotRepresentable(
            "image is bounded; a finitely piecewise-affine embedding has coterminal image, "
            "so the surjective factor would have to be bounded"
        )
    shift_at, shift_after, gaps = [], [], []
    c = 0
    for i, b in enumerate(h.breaks):
        lft, v, rgt = _ev(h.laws[i], b), h.values[i], _ev(h.laws[i + 1], b)
        if lft < v:
            gaps.append(_Gap(b + c, True, lft, v))
            c += 1
        shift_at.append(c)
        if v < rgt:
            gaps.append(_Gap(b + c, False, v, rgt))
            c += 1
        shift_after.append(c)
    breaks = h.breaks

    def f_fn(x):
        i = bisect_left(breaks, x)
        if i < len(breaks) and breaks[i] == x:
            return x + shift_at[i]
        return x + (shift_after[i - 1] if i else 0)

    f = PLMap.from_evaluator(breaks, f_fn)

    def g_fn(y):
        for gp in gaps:
            t = y - gp.start
            if (gp.left and 0 <= t < 1) or (not gp.left and 0 < t <= 1):
                return gp.frm + t * (gp.to - gp.frm)
        return h(f.preimage(y))

    cuts = set()
    for gp in gaps:
        cuts.update((gp.start, gp.start + 1))
    cuts.update(f(b) for b in breaks)
    g = PLMap.from_evaluator(cuts, g_fn)
    return g, f
