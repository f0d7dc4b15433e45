from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qinterp.dsl import parse_map
from qinterp.errors import NotCofinal, NotEmbedding
from qinterp.interpretation import cofinal_rep, gap_inserter
from qinterp.intervals import Interval
from qinterp.plmap import PLMap, bump, compose, image, splice, support
from qinterp.predicates import (
    BumpKind,
    Comparability,
    SupportRelation,
    adjacent_bumps,
    apart,
    bump_kind,
    codesame,
    cofinal_endpoint,
    comparability,
    gap_bumps,
    gap_components,
    is_bump,
    is_gap,
    left_absorbs,
    opp_support,
    orbital_restrictions,
    support_between,
    support_relation,
    union_bump,
)

from conftest import FLAT, JUMP, automorphisms, embeddings, endomorphisms, rats

TWO_X, SHIFT, ID = PLMap.affine(2), PLMap.translation(1), PLMap.identity()


def test_comparability():
    assert comparability(SHIFT) == Comparability.POSITIVE
    assert comparability(ID) == Comparability.POSITIVE | Comparability.NEGATIVE
    assert comparability(TWO_X) == Comparability.NEITHER
    assert comparability(PLMap.translation(-1)) == Comparability.NEGATIVE


def test_apart():
    assert apart(bump(0, 1), bump(2, 3))
    assert apart(ID, TWO_X) and apart(SHIFT, ID)
    assert not apart(TWO_X, SHIFT)
    assert apart(bump(0, 1), bump(1, 2, -1))


def test_is_bump():
    assert is_bump(SHIFT)
    assert not is_bump(TWO_X)
    assert not is_bump(ID)


def test_orbital_restrictions():
    left, right = orbital_restrictions(TWO_X)
    for k in range(-50, 50):
        x = Fraction(k, 3)
        assert left(x) == (2 * x if x < 0 else x)
        assert right(x) == (2 * x if x > 0 else x)
    assert orbital_restrictions(SHIFT) == [SHIFT]
    assert orbital_restrictions(ID) == []


def test_support_relation():
    b = bump(0, 1)
    assert support_relation(b, bump(0, 1, -1)) is SupportRelation.EQUAL
    assert support_relation(b, TWO_X) is SupportRelation.FIRST_INSIDE_SECOND
    assert support_relation(TWO_X, b) is SupportRelation.SECOND_INSIDE_FIRST
    assert support_relation(b, bump(5, 6)) is SupportRelation.DISJOINT
    assert support_relation(bump(0, 2), bump(1, 3)) is SupportRelation.OVERLAPPING
    assert str(SupportRelation.EQUAL) == "Equal"


def test_support_between():
    a, b, c = bump(0, 1), bump(2, 3), bump(4, 5)
    assert support_between(a, b, c)
    assert support_between(c, b, a)
    assert not support_between(a, c, b)
    assert not support_between(bump(0, 3), b, c)


def test_adjacent_and_union():
    assert adjacent_bumps(bump(0, 1), bump(1, 2))
    assert adjacent_bumps(bump(1, 2), bump(0, 1))
    assert not adjacent_bumps(bump(0, 1), bump(2, 3))
    assert not adjacent_bumps(bump(0, 2), bump(1, 3))
    f, g = bump(0, 1), bump(1, 2)
    assert union_bump(f, g, bump(0, 2))
    assert not union_bump(f, g, bump(0, 3))
    assert union_bump(bump(0, 1), bump(3, 4), bump(0, 4))


def test_bump_kinds():
    assert bump_kind(SHIFT) is BumpKind.COTERMINAL
    assert bump_kind(bump(0, 1)) is BumpKind.BOUNDED
    assert bump_kind(cofinal_rep(3)) is BumpKind.COFINAL_RIGHT
    assert bump_kind(cofinal_rep(3, "left")) is BumpKind.COFINAL_LEFT
    assert bump_kind(TWO_X) is BumpKind.NOT_BUMP
    assert cofinal_endpoint(cofinal_rep(3)) == (3, BumpKind.COFINAL_RIGHT)
    with pytest.raises(NotCofinal):
        cofinal_endpoint(SHIFT)


def test_opp_support_and_codesame():
    l2, r2, r3 = bump("-inf", 2), bump(2, "inf"), bump(3, "inf")
    assert opp_support(l2, r2)
    assert not opp_support(l2, r3)
    assert not opp_support(r2, bump(2, "inf", -1))
    assert codesame(r3, bump(3, "inf", -1))
    assert codesame(r3, bump("-inf", 3))
    assert not codesame(r3, bump(4, "inf"))
    assert not codesame(r3, bump(0, 3))


def test_left_absorbs():
    j = parse_map(JUMP)
    assert left_absorbs(bump(0, 1), j)
    assert not left_absorbs(SHIFT, ID)
    assert left_absorbs(ID, parse_map(FLAT))


def test_gap_bumps():
    j = parse_map(JUMP)
    (b,) = gap_bumps(j)
    assert support(b) == support(bump(0, 1))
    assert is_gap(j, b) and not is_gap(j, bump(0, 2))
    assert gap_bumps(TWO_X) == []
    two = compose(gap_inserter(5), j)
    assert [str(iv) for iv in gap_components(two)] == ["(0,1)", "(5,6)"]
    with pytest.raises(NotEmbedding):
        gap_bumps(parse_map(FLAT))


@given(automorphisms(), automorphisms())
def test_apart_maps_commute(f, g):
    if apart(f, g):
        assert compose(f, g) == compose(g, f)


@given(automorphisms())
def test_restrictions_multiply_back(g):
    rs = orbital_restrictions(g)
    if is_bump(g):
        assert rs == [g]
    prod = ID
    for r in reversed(rs):
        prod = compose(r, prod)
    assert prod == g


@given(endomorphisms(), automorphisms())
def test_absorption_matches_image_support(f, g):
    assert left_absorbs(g, f) == image(f).isdisjoint(support(g))


@given(embeddings(), st.lists(st.tuples(rats, rats), min_size=10, max_size=10))
def test_gap_bumps_are_maximal(f, spans):
    for b in gap_bumps(f):
        assert left_absorbs(b, f)
        for lo, hi in spans:
            if lo == hi:
                continue
            z = bump(min(lo, hi), max(lo, hi))
            if left_absorbs(z, f) and not support(z).isdisjoint(support(b)):
                assert support(z) <= support(b)


@given(st.lists(st.tuples(st.integers(-3, 3), st.booleans(), st.sampled_from((1, -1))), min_size=3, max_size=3))
def test_codesame_is_equivalence(specs):
    x, y, z = (cofinal_rep(a, "right" if r else "left", p) for a, r, p in specs)
    assert codesame(x, x)
    assert codesame(x, y) == codesame(y, x)
    if codesame(x, y) and codesame(y, z):
        assert codesame(x, z)


def test_splice_restricts():
    s = splice(TWO_X, Interval.open(0, "inf"))
    assert s(-3) == -3 and s(3) == 6
