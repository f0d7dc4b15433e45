from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qinterp import generators as gen
from qinterp.dsl import parse_lift, parse_map
from qinterp.errors import DomainError, NotCofinal
from qinterp.gauge import (
    CircleLift,
    GaugeCandidate,
    IntervalEst,
    NotGaugePair,
    RationalCert,
    _system,
    gauge_check,
    interval_estimate,
    is_lift,
    rational_endpoint_check,
    rotation_number,
)
from qinterp.interpretation import cofinal_rep
from qinterp.plmap import PLMap, compose

from conftest import TWO_SLOPE

# the two-slope lift moved up by 1/5; no periodic orbit of period <= 50
NO_SHORT_PERIOD = "lift{ [0,1/2): x/2+9/20; [1/2,1): 3x/2-1/20 }"

SHIFT = PLMap.translation(1)
POINTS = [Fraction(k * 13 - 650, 1 + k % 11) for k in range(100)]


def test_is_lift():
    assert is_lift(PLMap.translation(Fraction(3, 2)))
    assert not is_lift(PLMap.affine(2))
    g = parse_lift(TWO_SLOPE)
    assert is_lift(g)
    for x in POINTS:
        assert g(x + 1) == g(x) + 1


def test_lift_validation():
    with pytest.raises(DomainError):
        parse_lift("lift{ [0,1/2): x; [1/2,1): x+1/4 }")
    assert CircleLift.from_plmap(PLMap.translation(2))(Fraction(1, 3)) == Fraction(7, 3)


def test_lift_algebra():
    g = parse_lift(TWO_SLOPE)
    gi = g.inverse()
    g3 = g.power(3)
    for x in POINTS[:30]:
        assert gi(g(x)) == x
        assert g3(x) == g(g(g(x)))
        assert g.shift(2)(x) == g(x) + 2


def test_rotation_of_translation():
    rot = rotation_number(PLMap.translation(Fraction(3, 2)))
    assert isinstance(rot, RationalCert)
    assert rot.rho == Fraction(3, 2)
    assert (rot.p, rot.q) == (3, 2)


def test_rotation_of_two_slope_lift():
    rot = rotation_number(parse_lift(TWO_SLOPE))
    assert rot == RationalCert(Fraction(0), Fraction(1, 2), 0, 1)


def test_no_short_period_gives_interval():
    g = parse_lift(NO_SHORT_PERIOD)
    for q in range(1, 51):
        gq = g.power(q)
        for p in range(q + 1):
            assert not gq.fixed_points_in_period(p)
    est = rotation_number(g, max_period=50, max_iter=4096)
    assert isinstance(est, IntervalEst)
    assert est.hi - est.lo <= Fraction(2, 4096)
    assert (est.lo, est.hi) == (Fraction(323, 1024), Fraction(1293, 4096))
    assert not any(Fraction(p, q) in est for q in range(1, 51) for p in range(q + 1))


@pytest.mark.parametrize("p,q", [(1, 3), (2, 7), (-3, 4), (9, 10)])
def test_translation_estimate_contains_rho(p, q):
    est = rotation_number(PLMap.translation(Fraction(p, q)), max_period=0, max_iter=1024)
    assert Fraction(p, q) in est
    assert est.hi - est.lo <= Fraction(2, 1024)


def check_certificate(f, g, res):
    assert isinstance(res, NotGaugePair) and res.certificate is not None
    c = res.certificate
    for h in (c.h1, c.h2):
        for x in POINTS:
            assert h(f(x)) == f(h(x))
            assert h(g(x)) == g(h(x))
    x = c.separator
    assert c.h1(c.h2(x)) != c.h2(c.h1(x))


def test_gauge_integer_translation():
    g = PLMap.translation(2)
    check_certificate(SHIFT, g, gauge_check(SHIFT, g))


def test_gauge_half_translation():
    g = PLMap.translation(Fraction(3, 2))
    res = gauge_check(SHIFT, g)
    assert "3/2" in res.reason
    check_certificate(SHIFT, g, res)


def test_gauge_on_a_lift():
    g = parse_lift(TWO_SLOPE)
    check_certificate(SHIFT, g, gauge_check(None, g))


def test_gauge_candidate():
    res = gauge_check(None, parse_lift(NO_SHORT_PERIOD), max_period=50)
    assert isinstance(res, GaugeCandidate)


def test_gauge_with_nonlinear_f():
    f = parse_map("pl{ (-inf,0): x+1; [0,inf): 2x+1 }")
    g = compose(f, f)
    check_certificate(f, g, gauge_check(f, g))
    assert gauge_check(PLMap.affine(2), g).reason == "f is not coterminal"
    assert gauge_check(f, SHIFT).reason == "f and g do not commute"


def test_rational_endpoints():
    assert rational_endpoint_check(cofinal_rep(3))
    assert rational_endpoint_check(cofinal_rep(-2, "left"))
    with pytest.raises(NotCofinal):
        rational_endpoint_check(SHIFT)


@given(st.integers(0, 10**6))
def test_certificates_self_verify(seed):
    g = gen.lift(gen.rng_for(seed, "lift"))
    rot = rotation_number(g, max_period=16, max_iter=256)
    if isinstance(rot, RationalCert):
        assert g.power(rot.q)(rot.witness) == rot.witness + rot.p
    else:
        assert rot.hi - rot.lo <= Fraction(2, 256)


@given(st.integers(0, 10**6), st.integers(1, 200))
def test_estimates_nest(seed, n):
    g = gen.lift(gen.rng_for(seed, "lift"))
    sys = _system(None, g)
    a, b = interval_estimate(sys, n), interval_estimate(sys, 2 * n)
    assert a.lo <= b.lo <= b.hi <= a.hi


@given(st.integers(-30, 30), st.integers(1, 10), st.integers(1, 300))
def test_translation_estimates_contain_rho(p, q, n):
    rho = Fraction(p, q)
    assert rho in interval_estimate(_system(None, CircleLift.translation(rho)), n)
