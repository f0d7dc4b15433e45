from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qinterp.interpretation import gap_inserter
from qinterp.plmap import PLMap, compose

settings.register_profile("qinterp", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qinterp")

SLOPES = [Fraction(s) for s in ("1/3", "1/2", "2/3", "1", "3/2", "2", "3")]

rats = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 6))
small_rats = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 2))
slopes = st.sampled_from(SLOPES)


@st.composite
def automorphisms(draw, max_points=4):
    n = draw(st.integers(0, max_points))
    xs = sorted(draw(st.sets(rats, min_size=n, max_size=n)))
    ys = sorted(draw(st.sets(rats, min_size=n, max_size=n)))
    if not xs:
        return PLMap.affine(draw(slopes), draw(rats))
    return PLMap.interpolating(list(zip(xs, ys)), draw(slopes), draw(slopes))


@st.composite
def embeddings(draw):
    f = draw(automorphisms())
    for v in draw(st.lists(rats, min_size=1, max_size=2)):
        f = compose(gap_inserter(v, draw(st.sampled_from(("left", "right")))), f)
    return compose(draw(automorphisms()), f)


@st.composite
def epimorphisms(draw):
    lo = draw(rats)
    hi = lo + draw(st.builds(Fraction, st.integers(1, 8), st.integers(1, 2)))
    flat = PLMap.from_evaluator([lo, hi], lambda x: x if x < lo else lo if x < hi else x - (hi - lo))
    return compose(draw(automorphisms()), compose(flat, draw(automorphisms())))


@st.composite
def endomorphisms(draw):
    return compose(draw(epimorphisms()), draw(embeddings()))


def piecewise(*pieces):
    """Reference evaluator: ``pieces`` are ``(lo, slope, offset)`` with the first ``lo`` ignored."""

    def fn(x):
        x = Fraction(x)
        law = pieces[0]
        for p in pieces[1:]:
            if x >= p[0]:
                law = p
        return Fraction(law[1]) * x + Fraction(law[2])

    return fn


@pytest.fixture
def grid():
    return [Fraction(n, d) for n in range(-30, 31, 3) for d in (1, 2, 7)]


JUMP = "pl{ (-inf,0): x; [0,inf): x+1 }"
FLAT = "pl{ (-inf,0): x; [0,1): 0; [1,inf): x-1 }"
TWO_SLOPE = "lift{ [0,1/2): x/2+1/4; [1/2,1): 3x/2-1/4 }"


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
