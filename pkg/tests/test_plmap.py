from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qinterp.dsl import parse_map
from qinterp.errors import DomainError, NotInvertible, NotRepresentable, PinInconsistent
from qinterp.intervals import Interval, IntervalSet
from qinterp.plmap import (
    MapClass,
    PLMap,
    bump,
    classify,
    compose,
    conjugate,
    factorize,
    fixed_points,
    image,
    invert,
    is_automorphism,
    right_inverse,
    support,
)

from conftest import FLAT, JUMP, automorphisms, embeddings, endomorphisms, epimorphisms, piecewise, rats

TWO_X = PLMap.affine(2)
ID = PLMap.identity()


def samples(n=100):
    return [Fraction(k * 7 - 350, 1 + k % 9) for k in range(n)]


def test_evaluate():
    assert TWO_X(3) == 6
    assert ID(Fraction(-7, 2)) == Fraction(-7, 2)
    assert parse_map(JUMP)(0) == 1
    assert parse_map(JUMP)(Fraction(-1, 10**6)) == Fraction(-1, 10**6)


def test_compose_examples():
    assert compose(TWO_X, PLMap.translation(1)) == PLMap.affine(2, 2)
    j = parse_map(JUMP)
    assert compose(j, ID) == j == compose(ID, j)
    got = compose(j, PLMap.translation(-1))
    oracle = piecewise((None, 1, -1), (1, 1, 0))
    assert all(got(x) == oracle(x) for x in samples())
    assert got == parse_map("pl{ (-inf,1): x-1; [1,inf): x }")


def test_invert_examples():
    assert invert(TWO_X) == PLMap.affine(Fraction(1, 2))
    assert invert(ID) == ID
    with pytest.raises(NotInvertible):
        invert(parse_map(JUMP))


def test_classify_examples():
    assert classify(TWO_X) is MapClass.AUTOMORPHISM
    assert classify(parse_map(JUMP)) is MapClass.EMBEDDING
    assert classify(parse_map(FLAT)) is MapClass.EPIMORPHISM
    assert classify(ID) is MapClass.IDENTITY
    assert classify(compose(parse_map(FLAT), parse_map(JUMP))) in (MapClass.GENERAL, MapClass.IDENTITY)


def test_image_examples():
    assert image(PLMap.translation(1)).is_full
    im = image(parse_map(JUMP))
    assert str(im) == "(-inf,0) u [1,inf)"
    # membership oracle: y is hit iff it is below 0 or at least 1
    for y in samples():
        assert (y in im) == (y < 0 or y >= 1)
    assert image(parse_map(FLAT)).is_full


def test_conjugate_examples():
    t = PLMap.translation(1)
    c = conjugate(TWO_X, t)
    assert c == PLMap.affine(2, -1)
    assert all(c(x) == t(TWO_X(invert(t)(x))) for x in samples())
    assert conjugate(TWO_X, ID) == TWO_X
    moved = conjugate(bump(0, "inf"), t)
    assert support(moved) == IntervalSet([Interval.open(1, "inf")])


def test_right_inverse_examples():
    assert right_inverse(ID) == ID
    g = parse_map(FLAT)
    f = right_inverse(g)
    want = piecewise((None, 1, 0), (0, 1, 0), (Fraction(1, 10**9), 1, 1))
    for y in samples():
        assert g(f(y)) == y
        if y != 0:
            assert f(y) == want(y)
    assert f(0) == 0
    pinned = right_inverse(g, pin=(0, Fraction(1, 2)))
    assert pinned(0) == Fraction(1, 2)
    assert all(g(pinned(y)) == y for y in samples())
    with pytest.raises(PinInconsistent):
        right_inverse(g, pin=(0, 2))


def test_factorize_examples():
    assert factorize(ID) == (ID, ID)
    h = parse_map(JUMP)
    g, f = factorize(h)
    assert f.is_injective and g.is_surjective
    pts = [Fraction(k, 4) for k in range(-400, 400, 4)]
    assert all(g(f(x)) == h(x) for x in pts)
    capped = parse_map("pl{ (-inf,0): 0; [0,1): x; [1,inf): 1 }")
    with pytest.raises(NotRepresentable):
        factorize(capped)


def test_bump_shape():
    b = bump(0, 3)
    assert support(b) == IntervalSet([Interval.open(0, 3)])
    assert b(1) == 2 and b(3) == 3 and b(-1) == -1
    assert b.breaks == (0, 1, 3)
    assert support(bump(0, 3, -1)) == support(b)


def test_equality_is_canonical():
    a = parse_map("pl{ (-inf,0): x; [0,1): x; [1,inf): x }")
    assert a == ID and a.breaks == ()
    with pytest.raises(DomainError):
        PLMap.interpolating([(0, 1), (1, 1)])


@given(automorphisms(), embeddings(), st.lists(rats, min_size=20, max_size=20))
def test_compose_is_pointwise(f, g, xs):
    fg = compose(f, g)
    assert all(fg(x) == f(g(x)) for x in xs)


@given(automorphisms())
def test_inverse_cancels(f):
    assert is_automorphism(f)
    assert compose(f, invert(f)).is_identity
    assert classify(compose(invert(f), f)) is MapClass.IDENTITY


@given(embeddings(), embeddings(), epimorphisms(), epimorphisms())
def test_classes_closed_under_composition(m1, m2, e1, e2):
    assert compose(m1, m2).is_injective
    assert image(compose(e1, e2)).is_full


@given(endomorphisms(), endomorphisms())
def test_image_of_composite_shrinks(f, g):
    assert image(compose(f, g)) <= image(f)


@given(epimorphisms(), st.lists(rats, min_size=30, max_size=30))
def test_right_inverse_is_section(g, ys):
    f = right_inverse(g)
    assert f.is_injective
    assert all(g(f(y)) == y for y in ys)


@given(endomorphisms(), st.lists(rats, min_size=30, max_size=30))
def test_factorization(h, xs):
    g, f = factorize(h)
    assert f.is_injective and image(g).is_full
    assert all(g(f(x)) == h(x) for x in xs)


@given(automorphisms())
def test_fixed_points_are_fixed(f):
    fx = fixed_points(f)
    for x in (iv.sample() for iv in fx):
        assert f(x) == x
    for x in (iv.sample() for iv in support(f)):
        assert f(x) != x
