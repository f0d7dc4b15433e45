"""Rationals as classes of cofinal bumps, and the monoid actions on them.

A rational ``q`` is coded by any cofinal bump with support ``(q, inf)`` or
``(-inf, q)``; two codes name the same point when their finite endpoints
agree.  Automorphisms act by conjugation.  For embeddings the action is
witnessed through the act1/act2 construction: a gap of the image just
beside ``f(q)`` separates the moved part of ``f g f^-1`` from the rest.

Those witnesses exist only when the image of ``f`` has no other gap on
the side of ``q`` that the code moves: an automorphism ``h'`` with
``f g = h' f`` must permute the gaps below (or above) ``f(q)`` while
moving every point there, which a finite nonzero set of gaps forbids.
:func:`act1_check` reports that situation as a failure with its reason.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    ActionMismatch,
    NotAutomorphism,
    NotCofinal,
    NotEmbedding,
    NotEpimorphism,
    PreconditionViolated,
)
from .intervals import NEG_INF, POS_INF, as_rat
from .orbitals import is_conjugate
from .plmap import (
    MapClass,
    PLMap,
    bump,
    classify,
    compose,
    conjugate,
    factorize,
    invert,
    is_automorphism,
    right_inverse,
)
from .predicates import (
    BumpKind,
    SupportRelation,
    adjacent_bumps,
    bump_span,
    cofinal_endpoint,
    is_gap,
    support_relation,
    union_bump,
)

RIGHT, LEFT = "right", "left"


def cofinal_rep(q, side: str = RIGHT, parity: int = 1) -> PLMap:
    """Canonical cofinal bump coding ``q``: support ``(q, inf)`` or ``(-inf, q)``."""
    q = as_rat(q)
    return bump(q, POS_INF, parity) if side == RIGHT else bump(NEG_INF, q, parity)


@dataclass(frozen=True, eq=False)
class CodedRational:
    representative: PLMap
    endpoint: Fraction

    def __eq__(self, other):
        return isinstance(other, CodedRational) and self.endpoint == other.endpoint

    def __hash__(self):
        return hash(self.endpoint)

    @property
    def side(self) -> str:
        return _side(self.representative)

    def __repr__(self):
        return f"CodedRational({self.endpoint})"


def _side(f: PLMap) -> str:
    return RIGHT if cofinal_endpoint(f)[1] is BumpKind.COFINAL_RIGHT else LEFT


def _parity(f: PLMap) -> int:
    x = bump_span(f).sample()
    return 1 if f(x) > x else -1


def encode(q) -> CodedRational:
    q = as_rat(q)
    return CodedRational(cofinal_rep(q), q)


def decode(f: PLMap) -> Fraction:
    return cofinal_endpoint(f)[0]


def code(f: PLMap) -> CodedRational:
    """Wrap an arbitrary cofinal bump as a coded rational."""
    return CodedRational(f, decode(f))


def group_act(f: PLMap, c: CodedRational) -> CodedRational:
    if not is_automorphism(f):
        raise NotAutomorphism(f"{f} is not an automorphism")
    return code(conjugate(c.representative, f))


def monoid_act(f: PLMap, c: CodedRational) -> CodedRational:
    if not f.is_injective:
        raise NotEmbedding(f"{f} is not injective")
    return encode(f(c.endpoint))


def epi_act(f: PLMap, c: CodedRational) -> CodedRational:
    if not f.is_surjective:
        raise NotEpimorphism(f"{f} is not surjective")
    return encode(f(c.endpoint))


def endo_act(h: PLMap, c: CodedRational) -> CodedRational:
    return encode(h(c.endpoint))


@dataclass(frozen=True)
class Betweenness:
    holds: bool
    witness: Optional[PLMap] = None


def linear_between(c1: CodedRational, c2: CodedRational, c3: CodedRational) -> Betweenness:
    q, r, s = c1.endpoint, c2.endpoint, c3.endpoint
    holds = q <= r <= s or s <= r <= q
    if q < r < s:
        return Betweenness(True, PLMap.interpolating([(q, r), (r, s)]))
    if s < r < q:
        return Betweenness(True, PLMap.interpolating([(r, s), (q, r)]))
    return Betweenness(holds)


# -- act1 ----------------------------------------------------------------


@dataclass(frozen=True)
class Act1Result:
    holds: bool
    reason: str = ""
    h_prime: Optional[PLMap] = None
    k: Optional[PLMap] = None

    def __bool__(self):
        return self.holds


def _gap_sides(f: PLMap, i: int) -> tuple[bool, bool]:
    b, v = f.breaks[i], f.values[i]
    return f.left_limit(b) < v, v < f.right_limit(b)


def _f_g_finv(f: PLMap, g: PLMap, lo, hi) -> PLMap:
    """``f g f^-1`` on the open image window ``(lo, hi)``, the identity elsewhere."""
    cands = {e for e in (lo, hi) if e not in (NEG_INF, POS_INF)}
    xs = set(f.breaks) | set(g.breaks)
    # g(x) crossing a breakpoint of f
    g_inv = invert(g)
    xs |= {g_inv(b) for b in f.breaks}
    for x in xs:
        y = f(x)
        if lo < y < hi:
            cands.add(y)

    def fn(y):
        if lo < y < hi:
            return f(g(f.preimage(y)))
        return y

    return PLMap.from_evaluator(cands, fn)


def act1_check(f: PLMap, g: PLMap, h: PLMap) -> Act1Result:
    """Decide act1(f, g, h) and build its witnesses ``h'`` and ``k``.

    With ``g`` coding ``q`` on the left (support ``(-inf, q)``) it holds
    exactly when ``f`` has a gap ``[r', f(q))`` just below ``f(q)``, no
    other gap below it, and ``h`` codes ``f(q)``; the right-hand case is
    the mirror image.
    """
    if not f.is_injective:
        raise PreconditionViolated(f"f is not an embedding ({classify(f)})")
    for name, m in (("g", g), ("h", h)):
        try:
            cofinal_endpoint(m)
        except NotCofinal as exc:
            raise PreconditionViolated(f"{name} is not a rational cofinal bump: {exc}") from None
    if not is_conjugate(g, h):
        raise PreconditionViolated("g and h are not conjugate")
    q, side = decode(g), _side(g)
    fq = f(q)
    if side == LEFT:
        r1 = f.left_limit(q)
        if not r1 < fq:
            return Act1Result(False, f"no gap of im(f) directly below f(q) = {fq}")
        for i, b in enumerate(f.breaks):
            if b < q and any(_gap_sides(f, i)):
                return Act1Result(False, f"im(f) has a gap at f({b}) = {f(b)} below f(q); no h' exists")
        h1 = _f_g_finv(f, g, NEG_INF, r1)
        k = bump(r1, fq, _parity(g))
    else:
        r1 = f.right_limit(q)
        if not fq < r1:
            return Act1Result(False, f"no gap of im(f) directly above f(q) = {fq}")
        for i, b in enumerate(f.breaks):
            if b > q and any(_gap_sides(f, i)):
                return Act1Result(False, f"im(f) has a gap at f({b}) = {f(b)} above f(q); no h' exists")
        h1 = _f_g_finv(f, g, r1, POS_INF)
        k = bump(fq, r1, _parity(g))
    if decode(h) != fq:
        return Act1Result(False, f"h codes {decode(h)}, but f(q) = {fq}", h1, k)
    # verify every clause of the formula on the constructed witnesses
    checks = [
        (is_automorphism(h1) and is_conjugate(h, h1), "h' is not conjugate to h"),
        (support_relation(h1, h) in (SupportRelation.FIRST_INSIDE_SECOND, SupportRelation.EQUAL), "supp h' not in supp h"),
        (compose(f, g) == compose(h1, f), "f g != h' f"),
        (is_gap(f, k), "k is not a gap bump of f"),
        (adjacent_bumps(k, h1), "k and h' are not adjacent"),
        (union_bump(k, h1, h), "supp h is not the hull of supp k and supp h'"),
    ]
    for ok, why in checks:
        if not ok:
            return Act1Result(False, why, h1, k)
    return Act1Result(True, "", h1, k)


# -- act2 / act3 / act4 ----------------------------------------------------


def gap_inserter(v, side: str = LEFT) -> PLMap:
    """Unit gap at ``v``: ``[v, v+1)`` missed (left) or ``(v, v+1]`` missed (right)."""
    v = as_rat(v)
    if side == LEFT:
        return PLMap.from_evaluator([v], lambda x: x if x < v else x + 1)
    return PLMap.from_evaluator([v], lambda x: x if x <= v else x + 1)


@dataclass(frozen=True)
class Act2Witness:
    f1: PLMap
    f2: PLMap
    k: PLMap
    first: Act1Result
    second: Act1Result

    @property
    def holds(self) -> bool:
        return self.first.holds and self.second.holds

    def __bool__(self):
        return self.holds


def _require_codes(g: PLMap, h: PLMap):
    for name, m in (("g", g), ("h", h)):
        try:
            cofinal_endpoint(m)
        except NotCofinal as exc:
            raise PreconditionViolated(f"{name} is not a rational cofinal bump: {exc}") from None
    if not is_conjugate(g, h):
        raise PreconditionViolated("g and h are not conjugate")


def act2_witness(f: PLMap, g: PLMap, h: PLMap) -> Act2Witness:
    if not f.is_injective:
        raise NotEmbedding(f"{f} is not injective")
    _require_codes(g, h)
    q, r = decode(g), decode(h)
    if f(q) != r:
        raise ActionMismatch(f"f({q}) = {f(q)}, but h codes {r}")
    side = _side(g)
    f2 = gap_inserter(r, side)
    f1 = compose(f2, f)
    k = cofinal_rep(f1(q), side, _parity(g))
    return Act2Witness(f1, f2, k, act1_check(f1, g, k), act1_check(f2, h, k))


@dataclass(frozen=True)
class Act3Witness:
    right_inverse: PLMap
    inner: Act2Witness
    is_section: bool

    @property
    def holds(self) -> bool:
        return self.is_section and self.inner.holds

    def __bool__(self):
        return self.holds


def act3_witness(f: PLMap, g: PLMap, h: PLMap) -> Act3Witness:
    """act3(f, g, h): a right inverse ``f'`` with ``f'(r) = q`` and act2(f', h, g)."""
    if not f.is_surjective:
        raise NotEpimorphism(f"{f} is not surjective")
    _require_codes(g, h)
    q, r = decode(g), decode(h)
    if f(q) != r:
        raise ActionMismatch(f"f({q}) = {f(q)}, but h codes {r}")
    fp = right_inverse(f, pin=(r, q))
    return Act3Witness(fp, act2_witness(fp, h, g), compose(f, fp).is_identity)


@dataclass(frozen=True)
class Act4Witness:
    epi: PLMap
    emb: PLMap
    middle: PLMap
    act3: Act3Witness
    act2: Act2Witness
    factors_ok: bool = field(default=True)

    @property
    def holds(self) -> bool:
        return self.factors_ok and self.act3.holds and self.act2.holds

    def __bool__(self):
        return self.holds


def act4_witness(h: PLMap, g: PLMap, k: PLMap) -> Act4Witness:
    """Factor ``h = e m`` and witness act3 on ``e`` and act2 on ``m``.

    Raises NotRepresentable (from :func:`factorize`) for bounded images.
    """
    _require_codes(g, k)
    q, r = decode(g), decode(k)
    if h(q) != r:
        raise ActionMismatch(f"h({q}) = {h(q)}, but k codes {r}")
    e, m = factorize(h)
    s = m(q)
    t = cofinal_rep(s, _side(g), _parity(g))
    ok = compose(e, m) == h and classify(m) in (MapClass.EMBEDDING, MapClass.AUTOMORPHISM, MapClass.IDENTITY)
    return Act4Witness(e, m, t, act3_witness(e, t, k), act2_witness(m, g, t), ok)
