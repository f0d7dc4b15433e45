"""Semantic evaluators for the support/orbital formulas on automorphisms.

Each function decides its formula through the structural characterization
(supports, orbitals, images) rather than by quantifying over the group.
"""
from __future__ import annotations

import enum

from .errors import NotAutomorphism, NotBump, NotCofinal, NotEmbedding
from .intervals import NEG_INF, POS_INF, Interval, IntervalSet, is_finite, strictly_left_of
from .orbitals import orbitals_of, require_automorphism
from .plmap import PLMap, bump, compose, image, splice, support


class Comparability(enum.Flag):
    NEITHER = 0
    POSITIVE = enum.auto()
    NEGATIVE = enum.auto()


class SupportRelation(enum.Enum):
    EQUAL = "Equal"
    DISJOINT = "Disjoint"
    FIRST_INSIDE_SECOND = "FirstInsideSecond"
    SECOND_INSIDE_FIRST = "SecondInsideFirst"
    OVERLAPPING = "Overlapping"

    def __str__(self):
        return self.value


class BumpKind(enum.Enum):
    COTERMINAL = "Coterminal"
    BOUNDED = "Bounded"
    COFINAL_LEFT = "CofinalLeft"
    COFINAL_RIGHT = "CofinalRight"
    NOT_BUMP = "NotBump"

    def __str__(self):
        return self.value


def comparability(f: PLMap) -> Comparability:
    parities = {o.parity for o in orbitals_of(f)}
    out = Comparability.NEITHER
    if -1 not in parities:
        out |= Comparability.POSITIVE
    if 1 not in parities:
        out |= Comparability.NEGATIVE
    return out


def apart(f: PLMap, g: PLMap) -> bool:
    require_automorphism(f, g)
    sf, sg = support(f), support(g)
    return strictly_left_of(sf, sg) or strictly_left_of(sg, sf)


def _bumps(f: PLMap):
    return [o for o in orbitals_of(f) if o.parity]


def is_bump(f: PLMap) -> bool:
    return len(_bumps(f)) == 1


def orbital_restrictions(g: PLMap) -> list[PLMap]:
    return [splice(g, o.span) for o in _bumps(g)]


def support_relation(f: PLMap, g: PLMap) -> SupportRelation:
    require_automorphism(f, g)
    sf, sg = support(f), support(g)
    if sf == sg:
        return SupportRelation.EQUAL
    if sf.isdisjoint(sg):
        return SupportRelation.DISJOINT
    if sf <= sg:
        return SupportRelation.FIRST_INSIDE_SECOND
    if sg <= sf:
        return SupportRelation.SECOND_INSIDE_FIRST
    return SupportRelation.OVERLAPPING


def bump_span(f: PLMap) -> Interval:
    """The unique nontrivial orbital of a bump."""
    bs = _bumps(f)
    if len(bs) != 1:
        raise NotBump(f"{f} has {len(bs)} nontrivial orbitals")
    return bs[0].span


def _require_bumps(*maps):
    return [bump_span(m) for m in maps]


def support_between(f: PLMap, g: PLMap, h: PLMap) -> bool:
    a, b, c = (IntervalSet([s]) for s in _require_bumps(f, g, h))
    if not (a.isdisjoint(b) and b.isdisjoint(c) and a.isdisjoint(c)):
        return False
    return (strictly_left_of(a, b) and strictly_left_of(b, c)) or (
        strictly_left_of(c, b) and strictly_left_of(b, a)
    )


def adjacent_bumps(f: PLMap, g: PLMap) -> bool:
    a, b = _require_bumps(f, g)
    if not IntervalSet([a]).isdisjoint(IntervalSet([b])):
        return False
    return (is_finite(a.hi) and a.hi == b.lo) or (is_finite(b.hi) and b.hi == a.lo)


def union_bump(f: PLMap, g: PLMap, h: PLMap) -> bool:
    span = bump_span(h)
    joint = support(f) | support(g)
    return bool(joint) and span == joint.hull()


def bump_kind(f: PLMap) -> BumpKind:
    require_automorphism(f)
    bs = _bumps(f)
    if len(bs) != 1:
        return BumpKind.NOT_BUMP
    span = bs[0].span
    if span.lo == NEG_INF and span.hi == POS_INF:
        return BumpKind.COTERMINAL
    if span.is_bounded:
        return BumpKind.BOUNDED
    return BumpKind.COFINAL_LEFT if span.lo == NEG_INF else BumpKind.COFINAL_RIGHT


def cofinal_endpoint(f: PLMap):
    """``(a, kind)`` for a cofinal bump with support ``(-inf, a)`` or ``(a, inf)``."""
    if not isinstance(f, PLMap):
        raise NotCofinal(f"{f!r} is not a map")
    try:
        kind = bump_kind(f)
    except NotAutomorphism as exc:
        raise NotCofinal(str(exc)) from None
    if kind is BumpKind.COFINAL_LEFT:
        return bump_span(f).hi, kind
    if kind is BumpKind.COFINAL_RIGHT:
        return bump_span(f).lo, kind
    raise NotCofinal(f"{f} is {kind}, not cofinal")


def opp_support(f: PLMap, g: PLMap) -> bool:
    kinds = {bump_kind(f), bump_kind(g)}
    if kinds != {BumpKind.COFINAL_LEFT, BumpKind.COFINAL_RIGHT}:
        return False
    return cofinal_endpoint(f)[0] == cofinal_endpoint(g)[0]


def codesame(f: PLMap, g: PLMap) -> bool:
    cofinal = (BumpKind.COFINAL_LEFT, BumpKind.COFINAL_RIGHT)
    if bump_kind(f) not in cofinal or bump_kind(g) not in cofinal:
        return False
    return cofinal_endpoint(f)[0] == cofinal_endpoint(g)[0]


def left_absorbs(g: PLMap, f: PLMap) -> bool:
    """Whether ``g o f = f``."""
    return compose(g, f) == f


def gap_components(f: PLMap) -> list[Interval]:
    """Open interiors of the maximal convex pieces of the complement of the image."""
    return [iv for iv in (c.interior() for c in ~image(f)) if iv is not None]


def gap_bumps(f: PLMap) -> list[PLMap]:
    if not f.is_injective:
        raise NotEmbedding(f"{f} is not injective")
    return [bump(iv.lo, iv.hi) for iv in gap_components(f)]


def is_gap(f: PLMap, t: PLMap) -> bool:
    """``t`` is a bump whose support is the interior of a maximal gap of ``f``."""
    if not is_bump(t):
        return False
    return bump_span(t) in gap_components(f)
