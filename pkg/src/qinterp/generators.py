"""Seeded random maps for property checks and the verify harness."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .gauge import CircleLift
from .intervals import NEG_INF, POS_INF
from .plmap import PLMap, bump, compose, conjugate

SLOPES = tuple(Fraction(s) for s in ("1/4", "1/3", "1/2", "2/3", "3/4", "1", "3/2", "2", "3", "4"))


@dataclass(frozen=True)
class Bounds:
    max_breaks: int = 6
    height: int = 32


def rng_for(seed, *tags) -> random.Random:
    """Independent deterministic stream per (seed, tags)."""
    return random.Random(":".join(str(t) for t in (seed, *tags)))


def rational(rng: random.Random, b: Bounds = Bounds(), den: int = 4) -> Fraction:
    return Fraction(rng.randint(-b.height, b.height), rng.randint(1, den))


def _distinct_sorted(rng, n, b: Bounds) -> list[Fraction]:
    out: set = set()
    while len(out) < n:
        out.add(rational(rng, b))
    return sorted(out)


def interpolated(rng: random.Random, b: Bounds = Bounds()) -> PLMap:
    n = rng.randint(1, max(1, b.max_breaks))
    xs, ys = _distinct_sorted(rng, n, b), _distinct_sorted(rng, n, b)
    return PLMap.interpolating(list(zip(xs, ys)), rng.choice(SLOPES), rng.choice(SLOPES))


def canonical_bump(rng: random.Random, b: Bounds = Bounds()) -> PLMap:
    kind = rng.choice(("bounded", "bounded", "left", "right", "line"))
    lo, hi = _distinct_sorted(rng, 2, b)
    parity = rng.choice((1, -1))
    if kind == "left":
        lo = NEG_INF
    elif kind == "right":
        hi = POS_INF
    elif kind == "line":
        lo, hi = NEG_INF, POS_INF
    return bump(lo, hi, parity)


def bump_product(rng: random.Random, b: Bounds = Bounds()) -> PLMap:
    out = PLMap.identity()
    for _ in range(rng.randint(1, 3)):
        out = compose(canonical_bump(rng, b), out)
    return out


def automorphism(rng: random.Random, b: Bounds = Bounds()) -> PLMap:
    mode = rng.random()
    if mode < 0.45:
        return interpolated(rng, b)
    if mode < 0.9:
        return bump_product(rng, b)
    if mode < 0.95:
        return PLMap.affine(rng.choice(SLOPES), rational(rng, b))
    return PLMap.identity()


def conjugate_pair(rng: random.Random, b: Bounds = Bounds()) -> tuple[PLMap, PLMap]:
    """A pair that is conjugate by construction, or an independent pair."""
    f = automorphism(rng, b)
    if rng.random() < 0.5:
        return f, conjugate(f, interpolated(rng, b))
    return f, automorphism(rng, b)


def _jumps(rng, b: Bounds, count: int) -> PLMap:
    """An embedding that is the identity up to unit-ish jumps at random points."""
    pts = _distinct_sorted(rng, count, b)
    jumps = [(p, Fraction(rng.randint(1, 4), rng.randint(1, 2)), rng.random() < 0.5) for p in pts]

    def fn(x):
        shift = Fraction(0)
        for p, w, left in jumps:
            if x > p or (left and x == p):
                shift += w
        return x + shift

    return PLMap.from_evaluator(pts, fn)


def embedding(rng: random.Random, b: Bounds = Bounds()) -> PLMap:
    """An injective, non-surjective map."""
    j = _jumps(rng, b, rng.randint(1, 3))
    return compose(interpolated(rng, b), compose(j, interpolated(rng, b)))


def _flats(rng, b: Bounds, count: int) -> PLMap:
    pts = _distinct_sorted(rng, 2 * count, b)
    spans = list(zip(pts[::2], pts[1::2]))

    def fn(x):
        y = x
        for lo, hi in spans:
            if x > hi:
                y -= hi - lo
            elif x >= lo:
                y -= x - lo
        return y

    return PLMap.from_evaluator(pts, fn)


def epimorphism(rng: random.Random, b: Bounds = Bounds()) -> PLMap:
    """A surjective, non-injective map."""
    e = _flats(rng, b, rng.randint(1, 2))
    return compose(interpolated(rng, b), compose(e, interpolated(rng, b)))


def _clamp(rng, b: Bounds) -> PLMap:
    c = rational(rng, b)
    if rng.random() < 0.5:
        return PLMap.from_evaluator([c], lambda x: max(x, c))
    return PLMap.from_evaluator([c], lambda x: min(x, c))


def endomorphism(rng: random.Random, b: Bounds = Bounds(), bounded: float = 0.25) -> PLMap:
    """A general weakly increasing map; with probability ``bounded`` its image is bounded on one side."""
    h = compose(epimorphism(rng, b), embedding(rng, b))
    if rng.random() < bounded:
        h = compose(_clamp(rng, b), h)
    return h


def lift(rng: random.Random, pieces: int = 0) -> CircleLift:
    """A random continuous degree-one lift with 2-3 pieces per period."""
    n = pieces or rng.randint(2, 3)
    cuts = sorted({Fraction(rng.randint(1, 15), 16) for _ in range(n - 1)})
    while len(cuts) < n - 1:
        cuts = sorted(set(cuts) | {Fraction(rng.randint(1, 15), 16)})
    v0 = Fraction(rng.randint(-16, 16), 8)
    inner = sorted({Fraction(rng.randint(1, 15), 16) for _ in range(len(cuts))})
    while len(inner) < len(cuts):
        inner = sorted(set(inner) | {Fraction(rng.randint(1, 15), 16)})
    xs = [Fraction(0), *cuts, Fraction(1)]
    ys = [v0, *(v0 + t for t in inner), v0 + 1]
    base = PLMap.interpolating(list(zip(xs, ys)))
    return CircleLift(base)
