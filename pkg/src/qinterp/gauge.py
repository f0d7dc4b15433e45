"""Commuting coterminal pairs, degree-one lifts and rotation numbers.

A pair ``(f, g)`` with ``f`` fixed-point free and ``g`` commuting with it
is measured by the rotation number of ``g`` relative to ``f``: the limit
of ``k_n / n`` where ``f^{k_n}(x) <= g^n(x) < f^{k_n + 1}(x)``.  When it is
a rational ``p/q`` there is a point ``w`` with ``g^q(w) = f^p(w)``, the
orbit of ``w`` is discrete, and the complementary intervals of that orbit
are permuted by ``<f, g>``.  Copying two non-commuting maps of one such
interval ``I`` around the orbit of ``I`` gives two non-commuting elements
of the centralizer, so the pair is not a gauge pair.

Finitely piecewise-affine maps commuting with ``x + 1`` are translations,
so genuine circle dynamics use :class:`CircleLift`, which stores one
period and is evaluated by ``g(x) = g0(x - n) + n`` with ``n = floor(x)``.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import DomainError, IterationBudgetExceeded
from .intervals import Interval, IntervalSet, as_rat
from .lazy import DEFAULT_BUDGET, BumpBlock, EquivariantGlue, FixedBlock, LazyMap, PLLiteral
from .orbitals import require_automorphism
from .plmap import PLMap, bump, compose, fixed_points, invert
from .predicates import BumpKind, bump_kind, cofinal_endpoint

MAX_PERIOD = 64
MAX_ITER = 4096

ONE = Fraction(1)


def _laws_on(pts: Sequence[Fraction], fn: Callable) -> list:
    laws = []
    for a, b in zip(pts, pts[1:]):
        p1, p2 = a + (b - a) / 3, a + 2 * (b - a) / 3
        y1, y2 = fn(p1), fn(p2)
        s = (y2 - y1) / (p2 - p1)
        laws.append((s, y1 - s * p1))
    return laws


def _pl_window(cuts, lo, hi, fn) -> PLMap:
    """A PLMap equal to ``fn`` on ``[lo, hi]``, extended affinely beyond it.

    ``fn`` must be continuous and affine between consecutive ``cuts``.
    """
    pts = sorted({lo, hi} | {c for c in cuts if lo < c < hi})
    laws = _laws_on(pts, fn)
    inner = pts[1:-1]
    return PLMap(tuple(inner), tuple(laws), tuple(fn(c) for c in inner))


@dataclass(frozen=True)
class CircleLift:
    """A continuous increasing ``g`` with ``g(x + 1) = g(x) + 1``.

    ``base`` agrees with ``g`` on ``[0, 1)``; its breakpoints lie in
    ``(0, 1)`` and its end laws are the laws of the first and last piece.
    """

    base: PLMap

    def __post_init__(self):
        b = self.base
        if any(not 0 < c < 1 for c in b.breaks):
            b = _pl_window(b.breaks, Fraction(0), ONE, b)
            object.__setattr__(self, "base", b)
        if not b.is_injective or not b.is_surjective:
            raise DomainError("a lift must be continuous and strictly increasing on [0,1)")
        if b.left_limit(ONE) != b(0) + 1:
            raise DomainError(f"lift is not periodic: g(1-) = {b.left_limit(ONE)}, g(0) + 1 = {b(0) + 1}")

    @classmethod
    def from_pieces(cls, pieces) -> "CircleLift":
        """Pieces ``(Interval, slope, offset)`` covering ``[0, 1)`` left to right."""
        if not pieces or pieces[0][0].lo != 0 or pieces[-1][0].hi != 1:
            raise DomainError("lift pieces must cover [0,1)")
        for (a, _, _), (b, _, _) in zip(pieces, pieces[1:]):
            if a.hi != b.lo:
                raise DomainError(f"lift pieces {a} and {b} do not meet")
        cuts = [iv.lo for iv, _, _ in pieces[1:]]

        def fn(x):
            for iv, s, c in reversed(pieces):
                if x >= iv.lo:
                    return as_rat(s) * x + as_rat(c)
            raise AssertionError

        return cls(_pl_window(cuts, Fraction(0), ONE, fn))

    @classmethod
    def translation(cls, c) -> "CircleLift":
        return cls(PLMap.translation(as_rat(c)))

    @classmethod
    def from_plmap(cls, g: PLMap) -> "CircleLift":
        if not is_lift(g):
            raise DomainError(f"{g} does not commute with x+1")
        return cls(g)

    @property
    def cuts(self) -> tuple:
        return (Fraction(0),) + self.base.breaks

    @property
    def pieces(self) -> list:
        pts = [*self.cuts, ONE]
        return [
            (Interval(a, b, True, False), *self.base.law_right(a))
            for a, b in zip(pts, pts[1:])
        ]

    def __call__(self, x) -> Fraction:
        n = math.floor(x)
        return self.base(x - n) + n

    def inverse(self) -> "CircleLift":
        v0 = self.base(0)
        cuts = [c - math.floor(c) for c in (self(c) for c in self.cuts)]

        def fn(y):
            k = math.floor(y - v0)
            return self.base.preimage(y - k) + k

        return CircleLift(_pl_window(cuts, Fraction(0), ONE, fn))

    def compose(self, other: "CircleLift") -> "CircleLift":
        """``self o other``."""
        cuts = set(other.cuts)
        for a, s, c in other.pieces:
            ya, yb = s * a.lo + c, s * a.hi + c
            for beta in self.cuts:
                for n in range(math.floor(ya) - 1, math.ceil(yb) + 1):
                    t = beta + n
                    if ya < t < yb:
                        cuts.add((t - c) / s)
        return CircleLift(_pl_window(cuts, Fraction(0), ONE, lambda x: self(other(x))))

    def __matmul__(self, other: "CircleLift") -> "CircleLift":
        return self.compose(other)

    def shift(self, k) -> "CircleLift":
        """``x -> g(x) + k``."""
        return CircleLift(compose(PLMap.translation(k), self.base))

    def power(self, n: int) -> "CircleLift":
        base = self if n >= 0 else self.inverse()
        out = CircleLift.translation(0)
        for _ in range(abs(n)):
            out = base.compose(out)
        return out

    def window(self, lo, hi) -> PLMap:
        """A PLMap equal to the lift on ``[lo, hi]``."""
        lo, hi = as_rat(lo), as_rat(hi)
        cuts = [c + n for n in range(math.floor(lo), math.ceil(hi) + 1) for c in self.cuts]
        return _pl_window(cuts, lo, hi, self)

    def fixed_points_in_period(self, p=0) -> list:
        """Solutions of ``g(x) = x + p`` in ``[0, 1)``, one per piece (or the piece start if a whole piece is fixed)."""
        out = []
        for iv, s, c in self.pieces:
            if s == 1:
                if c == p:
                    out.append(iv.lo)
                continue
            x = (c - p) / (1 - s)
            if x in iv:
                out.append(x)
        return out

    def __str__(self):
        from .dsl import pretty_lift

        return pretty_lift(self)


def is_lift(g) -> bool:
    """Whether ``g(x + 1) = g(x) + 1`` for every ``x``."""
    if isinstance(g, CircleLift):
        return True
    require_automorphism(g)
    t = PLMap.translation(1)
    return compose(g, t) == compose(t, g)


# -- rotation numbers ---------------------------------------------------


@dataclass(frozen=True)
class RationalCert:
    rho: Fraction
    witness: Fraction
    p: int
    q: int


@dataclass(frozen=True)
class IntervalEst:
    lo: Fraction
    hi: Fraction
    iterations: int

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


RotationNumberResult = Union[RationalCert, IntervalEst]


class _LiftSystem:
    """``f = x + 1`` and a circle lift ``g``."""

    def __init__(self, g: CircleLift):
        self.g, self.g_inv = g, g.inverse()
        self.f, self.f_inv = PLMap.translation(1), PLMap.translation(-1)

    def count(self, y, budget) -> int:
        return math.floor(y)

    def f_iter(self, x, k):
        return x + k

    def power(self, n: int) -> CircleLift:
        return self.g.power(n)

    def psi(self, a: int, n: int):
        """``f^a g^n`` and its inverse."""
        m = self.g.power(n).shift(a)
        return m, m.inverse()

    def solve(self, gq: CircleLift, p: int) -> Optional[Fraction]:
        sols = gq.fixed_points_in_period(p)
        return min(sols) if sols else None

    def phi(self, p: int, q: int, lo, hi) -> PLMap:
        return self.g.power(q).shift(-p).window(math.floor(lo) - 1, math.ceil(hi) + 1)


class _PLSystem:
    """A fixed-point-free ``f`` moving points up and a PL ``g`` commuting with it."""

    def __init__(self, f: PLMap, g: PLMap):
        self.f, self.g = f, g
        self.f_inv, self.g_inv = invert(f), invert(g)

    def f_iter(self, x, k):
        step = self.f if k >= 0 else self.f_inv
        for _ in range(abs(k)):
            x = step(x)
        return x

    def count(self, y, budget) -> int:
        """``k`` with ``f^k(0) <= y < f^(k+1)(0)``."""
        k, x = 0, Fraction(0)
        for _ in range(budget):
            if x <= y < self.f(x):
                return k
            if y >= x:
                x, k = self.f(x), k + 1
            else:
                x, k = self.f_inv(x), k - 1
        raise IterationBudgetExceeded(f"could not bracket {y} by the orbit of 0 in {budget} steps")

    def _shift(self, gq: PLMap, p: int) -> PLMap:
        fp = self.f_inv if p >= 0 else self.f
        for _ in range(abs(p)):
            gq = compose(fp, gq)
        return gq

    def power(self, n: int) -> PLMap:
        out = PLMap.identity()
        for _ in range(n):
            out = compose(self.g, out)
        return out

    def psi(self, a: int, n: int):
        m = self._shift(self.power(n), -a)
        return m, invert(m)

    def solve(self, gq: PLMap, p: int) -> Optional[Fraction]:
        fixed = fixed_points(self._shift(gq, p))
        if not fixed:
            return None
        iv = fixed.components[0]
        return iv.lo if iv.lo_closed else iv.sample()

    def phi(self, p: int, q: int, lo, hi) -> PLMap:
        return self._shift(self.power(q), p)


def _g_iter(sys, x, n: int) -> Fraction:
    for _ in range(n):
        x = sys.g(x)
    return x


def _system(f, g):
    if isinstance(g, CircleLift):
        if f is not None and not (isinstance(f, PLMap) and f == PLMap.translation(1)):
            raise DomainError("a circle lift is measured against f = x+1")
        return _LiftSystem(g)
    if f is None:
        f = PLMap.translation(1)
    return _PLSystem(f, g)


def _rotation(sys, max_period: int, max_iter: int) -> RotationNumberResult:
    est = interval_estimate(sys, max_iter)
    # the true number lies in the bracket, so only fractions inside it can have periodic points
    cands = {
        Fraction(p, q)
        for q in range(1, max_period + 1)
        for p in range(math.ceil(est.lo * q), math.floor(est.hi * q) + 1)
    }
    for r in sorted(cands, key=lambda r: (r.denominator, r)):
        p, q = r.numerator, r.denominator
        w = sys.solve(sys.power(q), p)
        if w is not None:
            return RationalCert(r, w, p, q)
    return est


def interval_estimate(sys, n: int) -> IntervalEst:
    if n < 1:
        raise ValueError("need at least one iteration")
    x = _g_iter(sys, Fraction(0), n)
    k = sys.count(x, DEFAULT_BUDGET)
    # f^k(0) <= g^n(0) gives k <= n*rho; exact equality pins rho from above too
    hi = k if sys.f_iter(Fraction(0), k) == x else k + 1
    return IntervalEst(Fraction(k, n), Fraction(hi, n), n)


def rotation_number(g, max_period: int = MAX_PERIOD, max_iter: int = MAX_ITER, f: Optional[PLMap] = None):
    """Rotation number of ``g`` relative to ``f`` (default ``x + 1``).

    Tries exact periodic points ``g^q(w) = f^p(w)`` for ``q <= max_period``
    (``max_period = 0`` skips the search) and otherwise brackets the
    number by ``max_iter`` iterates of 0.
    """
    return _rotation(_system(f, g), max_period, max_iter)


# -- non-gauge certificates -------------------------------------------


@dataclass(frozen=True, eq=False)
class OrbitCopy(LazyMap):
    """``psi . local . psi^-1`` on each ``psi(I)``, identity on the orbit of ``w``."""

    f: Callable
    f_inv: Callable
    w: Fraction
    fw: Fraction
    table: tuple  # (y_i, psi_i, psi_i^-1) with psi_i(w) = y_i, sorted by y_i
    local: LazyMap
    budget: int = DEFAULT_BUDGET

    def _translation_step(self) -> Optional[Fraction]:
        f = self.f
        if isinstance(f, PLMap) and not f.breaks and f.laws[0][0] == 1:
            return f.laws[0][1]
        return None

    def _apply(self, x, local):
        c = self._translation_step()
        if c is not None:
            m = math.floor((x - self.w) / c)
            x -= m * c
            i = bisect_right([t[0] for t in self.table], x) - 1
            y, psi, psi_inv = self.table[i]
            if x != y:
                x = psi(local(psi_inv(x)))
            return x + m * c
        m = 0
        for _ in range(self.budget):
            if x >= self.fw:
                x, m = self.f_inv(x), m + 1
            elif x < self.w:
                x, m = self.f(x), m - 1
            else:
                break
        else:
            raise IterationBudgetExceeded(f"no fundamental domain reached in {self.budget} steps")
        i = bisect_right([t[0] for t in self.table], x) - 1
        y, psi, psi_inv = self.table[i]
        if x != y:
            x = psi(local(psi_inv(x)))
        step = self.f if m >= 0 else self.f_inv
        for _ in range(abs(m)):
            x = step(x)
        return x

    def __call__(self, x):
        return self._apply(as_rat(x), self.local)

    def inverse_value(self, y):
        return self._apply(as_rat(y), self.local.inverse())


@dataclass(frozen=True)
class Certificate:
    h1: LazyMap
    h2: LazyMap
    separator: Fraction
    interval: Interval
    rotation: RationalCert


@dataclass(frozen=True)
class NotGaugePair:
    reason: str
    certificate: Optional[Certificate] = None


@dataclass(frozen=True)
class GaugeCandidate:
    estimate: IntervalEst


def _overlapping(lo, hi) -> tuple[PLMap, PLMap]:
    d = hi - lo
    return bump(lo, lo + 2 * d / 3), bump(lo + d / 3, hi)


def _local_pair(phi: PLMap, lo, hi) -> tuple[LazyMap, LazyMap, Interval]:
    """Two non-commuting maps of ``(lo, hi)`` commuting with ``phi`` there."""
    window = IntervalSet([Interval.closed(lo, hi)])
    fixed = fixed_points(phi) & window
    for iv in fixed:
        if not iv.is_point:
            b1, b2 = _overlapping(iv.lo, iv.hi)
            return PLLiteral(b1), PLLiteral(b2), Interval.open(iv.lo, iv.hi)
    moving = window.interior() - fixed
    span = moving.components[0]
    x0 = span.sample()
    d0, d1 = sorted((x0, phi(x0)))
    pad = (d1 - d0) / 6
    b1, b2 = _overlapping(d0 + pad, d1 - pad)
    phi_inv = invert(phi)
    parity = 1 if phi(x0) > x0 else -1
    out = []
    for b in (b1, b2):
        blocks = (
            FixedBlock(Interval.maybe("-inf", span.lo, False, True), Interval.maybe("-inf", span.lo, False, True), PLMap.identity()),
            BumpBlock(span, span, phi, phi_inv, phi, phi_inv, x0, b, parity),
            FixedBlock(Interval.maybe(span.hi, "inf", True, False), Interval.maybe(span.hi, "inf", True, False), PLMap.identity()),
        )
        out.append(EquivariantGlue(blocks))
    return out[0], out[1], Interval.open(d0 + pad, d1 - pad)


def certificate(sys, cert: RationalCert, grid: int = 97) -> Certificate:
    w, p, q = cert.witness, cert.p, cert.q
    fw = sys.f(w)
    table = []
    for j in range(q):
        y = _g_iter(sys, w, j)
        a = 0
        while y >= fw:
            y, a = sys.f_inv(y), a - 1
        while y < w:
            y, a = sys.f(y), a + 1
        table.append((y, a, j))
    table.sort()
    table = tuple((y, *sys.psi(a, n)) for y, a, n in table)
    y0 = table[0][0]
    y1 = table[1][0] if q > 1 else fw
    phi = sys.phi(p, q, y0, y1)
    l1, l2, probe = _local_pair(phi, y0, y1)
    h1 = OrbitCopy(sys.f, sys.f_inv, w, fw, table, l1)
    h2 = OrbitCopy(sys.f, sys.f_inv, w, fw, table, l2)
    width = probe.hi - probe.lo
    for i in range(1, grid):
        x = probe.lo + width * Fraction(i, grid)
        if h1(h2(x)) != h2(h1(x)):
            return Certificate(h1, h2, x, Interval.open(y0, y1), cert)
    raise AssertionError("overlapping bumps commuted on the whole probe grid")


def _parity(f: PLMap) -> int:
    return 1 if f(Fraction(0)) > 0 else -1


def gauge_check(f, g, max_period: int = MAX_PERIOD, max_iter: int = MAX_ITER):
    """Test whether ``(f, g)`` can be a gauge pair.

    ``g`` may be a PLMap or a :class:`CircleLift` (then ``f`` must be
    ``x + 1``).  A rational rotation number always produces a certificate,
    even when an earlier clause already failed.
    """
    if isinstance(g, CircleLift):
        f = PLMap.translation(1) if f is None else f
        if f != PLMap.translation(1):
            raise DomainError("a circle lift is measured against f = x+1")
        sys = _LiftSystem(g)
        reasons = []
        if g.fixed_points_in_period(0):
            reasons.append("g is not coterminal")
        elif g(Fraction(0)) < 0:
            reasons.append("g has parity -1, f has parity +1")
    else:
        require_automorphism(f, g)
        if bump_kind(f) is not BumpKind.COTERMINAL:
            return NotGaugePair("f is not coterminal")
        if compose(f, g) != compose(g, f):
            return NotGaugePair("f and g do not commute")
        reasons = []
        if bump_kind(g) is not BumpKind.COTERMINAL:
            reasons.append("g is not coterminal")
        elif _parity(g) != _parity(f):
            reasons.append("f and g have different parity")
        f_up = f if _parity(f) > 0 else invert(f)
        sys = _PLSystem(f_up, g)
    rot = _rotation(sys, max_period, max_iter)
    if isinstance(rot, RationalCert):
        why = "; ".join(reasons + [f"rotation number {rot.rho} is rational"])
        return NotGaugePair(why, certificate(sys, rot))
    if reasons:
        return NotGaugePair("; ".join(reasons))
    return GaugeCandidate(rot)


def rational_endpoint_check(f: PLMap) -> bool:
    """Always true here: every support endpoint of a finitely PL map is rational."""
    cofinal_endpoint(f)
    return True

