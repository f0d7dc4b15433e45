"""Orbitals, orbital patterns and conjugacy of piecewise-affine automorphisms.

The pattern word lists the orbitals from left to right.  Bumps are ``P``
(points move up) or ``M`` (points move down).  A maximal fixed region is
one ``F`` token whose flags record whether it has a least / greatest
element:

``F(+,+)``  a single fixed point
``F[+,+]``  a closed bounded interval of fixed points
``F(-,+)``  a fixed ray ``(-inf, a]``;  ``F(+,-)`` a ray ``[a, inf)``
``F(-,-)``  the whole line (the identity)

All countable dense fixed regions with matching end flags are
order-isomorphic, so two automorphisms are conjugate exactly when their
words agree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAutomorphism, NotConjugate
from .intervals import Interval, IntervalSet, is_finite
from .lazy import DEFAULT_BUDGET, BumpBlock, EquivariantGlue, FixedBlock
from .plmap import PLMap, fixed_points, invert, is_automorphism

_TOKEN = re.compile(r"P|M|F\([+-],[+-]\)|F\[\+,\+\]")


def require_automorphism(*maps: PLMap) -> None:
    for f in maps:
        if not isinstance(f, PLMap) or not is_automorphism(f):
            raise NotAutomorphism(f"{f} is not an automorphism")


@dataclass(frozen=True)
class Orbital:
    """A bump orbital (parity +-1, open span) or a maximal fixed region (parity 0)."""

    span: Interval
    parity: int

    def __str__(self):
        return f"{self.span} parity {self.parity:+d}" if self.parity else f"{self.span} parity 0"


@dataclass(frozen=True)
class OrbitalPattern:
    word: tuple[str, ...]

    def __str__(self):
        return " ".join(self.word)

    @classmethod
    def parse(cls, text: str) -> "OrbitalPattern":
        toks = text.split()
        for t in toks:
            if not _TOKEN.fullmatch(t):
                raise ValueError(f"bad pattern token {t!r}")
        return cls(tuple(toks))


def fixed_set(f: PLMap) -> IntervalSet:
    require_automorphism(f)
    return fixed_points(f)


def orbitals_of(f: PLMap) -> list[Orbital]:
    """Bump orbitals and maximal fixed regions of ``f``, left to right."""
    fixed = fixed_set(f)
    out = [Orbital(iv, 0) for iv in fixed]
    for iv in ~fixed:
        x = iv.sample()
        out.append(Orbital(iv, 1 if f(x) > x else -1))
    out.sort(key=lambda o: (o.span.lo, 0 if o.span.lo_closed else 1))
    return out


def _fixed_token(iv: Interval) -> str:
    if iv.is_point:
        return "F(+,+)"
    has_min, has_max = is_finite(iv.lo), is_finite(iv.hi)
    if has_min and has_max:
        return "F[+,+]"
    return f"F({'+' if has_min else '-'},{'+' if has_max else '-'})"


def pattern(f: PLMap) -> OrbitalPattern:
    word = []
    for orb in orbitals_of(f):
        if orb.parity == 0:
            word.append(_fixed_token(orb.span))
        else:
            word.append("P" if orb.parity > 0 else "M")
    return OrbitalPattern(tuple(word))


def is_conjugate(f: PLMap, g: PLMap) -> bool:
    return pattern(f) == pattern(g)


def _fixed_seed(src: Interval, dst: Interval) -> PLMap:
    if src.is_point:
        return PLMap.translation(dst.lo - src.lo)
    if src.is_bounded:
        return PLMap.interpolating([(src.lo, dst.lo), (src.hi, dst.hi)])
    if is_finite(src.hi):
        return PLMap.translation(dst.hi - src.hi)
    if is_finite(src.lo):
        return PLMap.translation(dst.lo - src.lo)
    return PLMap.identity()


def conjugator(f: PLMap, g: PLMap, budget: int = DEFAULT_BUDGET) -> EquivariantGlue:
    """A lazily evaluated automorphism ``h`` with ``h(f(x)) = g(h(x))``.

    Orbitals are matched in order.  Fixed regions are mapped affinely; on a
    bump the map sends the fundamental domain ``[x0, f(x0))`` affinely onto
    ``[y0, g(y0))`` and is extended by ``h = g^n h0 f^-n``.
    """
    require_automorphism(f, g)
    if not is_conjugate(f, g):
        raise NotConjugate(f"patterns differ: {pattern(f)} vs {pattern(g)}")
    f_inv, g_inv = invert(f), invert(g)
    blocks = []
    for src, dst in zip(orbitals_of(f), orbitals_of(g)):
        if src.parity == 0:
            blocks.append(FixedBlock(src.span, dst.span, _fixed_seed(src.span, dst.span)))
            continue
        x0, y0 = src.span.sample(), dst.span.sample()
        fx0, gy0 = f(x0), g(y0)
        slope = (gy0 - y0) / (fx0 - x0)
        seed = PLMap.affine(slope, y0 - slope * x0)
        blocks.append(BumpBlock(src.span, dst.span, f, f_inv, g, g_inv, Fraction(x0), seed, src.parity))
    return EquivariantGlue(tuple(blocks), budget)
