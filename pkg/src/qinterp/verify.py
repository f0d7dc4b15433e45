"""Deterministic randomized checks, one per lemma id.

Every trial draws from its own stream ``rng_for(seed, lemma, index)``, so
results do not depend on execution order.  A trial returns ``None`` on
success or a short description of the counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import generators as gen
from .errors import NotRepresentable
from .gauge import GaugeCandidate, RationalCert, gauge_check, rational_endpoint_check, rotation_number
from .generators import Bounds, rng_for
from .intervals import is_finite
from .interpretation import (
    LEFT,
    RIGHT,
    act1_check,
    act2_witness,
    act3_witness,
    act4_witness,
    cofinal_rep,
    decode,
    encode,
    endo_act,
    epi_act,
    gap_inserter,
    group_act,
    linear_between,
    monoid_act,
)
from .orbitals import conjugator, is_conjugate, orbitals_of, pattern
from .plmap import (
    PLMap,
    bump,
    compose,
    conjugate,
    factorize,
    image,
    is_automorphism,
    right_inverse,
    support,
)
from .predicates import (
    BumpKind,
    Comparability,
    SupportRelation,
    adjacent_bumps,
    apart,
    bump_kind,
    bump_span,
    codesame,
    comparability,
    gap_bumps,
    gap_components,
    is_bump,
    left_absorbs,
    opp_support,
    orbital_restrictions,
    support_between,
    support_relation,
    union_bump,
)

Trial = Callable[[object, Bounds], Optional[str]]


def samples(rng, n: int = 100, b: Bounds = Bounds()) -> list[Fraction]:
    return [Fraction(rng.randint(-8 * b.height, 8 * b.height), rng.randint(1, 8)) for _ in range(n)]


def _probe_points(f: PLMap, rng, b: Bounds) -> list[Fraction]:
    pts = samples(rng, 40, b)
    for o in orbitals_of(f):
        pts.append(o.span.sample())
        for e in (o.span.lo, o.span.hi):
            if is_finite(e):
                pts.extend((e, e - Fraction(1, 97), e + Fraction(1, 97)))
    return pts


# -- section 2 ----------------------------------------------------------


def _l21(rng, b):
    f = gen.automorphism(rng, b)
    c = comparability(f)
    pts = _probe_points(f, rng, b)
    pos, neg = all(f(x) >= x for x in pts), all(f(x) <= x for x in pts)
    if (Comparability.POSITIVE in c) != pos or (Comparability.NEGATIVE in c) != neg:
        return f"comparability({f}) = {c}, sampled positive={pos} negative={neg}"
    return None


def _spaced_bump(rng, b):
    return gen.canonical_bump(rng, b) if rng.random() < 0.7 else gen.automorphism(rng, b)


def _l22(rng, b):
    f, g = _spaced_bump(rng, b), _spaced_bump(rng, b)
    if apart(f, g) and compose(f, g) != compose(g, f):
        return f"apart but non-commuting: {f}, {g}"
    return None


def _l23(rng, b):
    f = gen.automorphism(rng, b)
    nontrivial = [o for o in orbitals_of(f) if o.parity]
    if is_bump(f) != (len(nontrivial) == 1):
        return f"is_bump({f}) disagrees with its orbitals"
    if is_bump(f) and orbital_restrictions(f) != [f]:
        return f"bump {f} is not its own restriction"
    return None


def _l24(rng, b):
    g = gen.automorphism(rng, b)
    rs = orbital_restrictions(g)
    prod = PLMap.identity()
    for r in rs:
        if not is_bump(r):
            return f"restriction {r} of {g} is not a bump"
        prod = compose(r, prod)
    if prod != g:
        return f"product of restrictions of {g} is {prod}"
    return None


def _l25(rng, b):
    f, g = _spaced_bump(rng, b), _spaced_bump(rng, b)
    rel = support_relation(f, g)
    sf, sg = support(f), support(g)
    pts = _probe_points(f, rng, b) + _probe_points(g, rng, b)
    in_f = {x for x in pts if f(x) != x}
    in_g = {x for x in pts if g(x) != x}
    expect = {
        SupportRelation.EQUAL: in_f == in_g,
        SupportRelation.DISJOINT: not (in_f & in_g),
        SupportRelation.FIRST_INSIDE_SECOND: in_f <= in_g,
        SupportRelation.SECOND_INSIDE_FIRST: in_g <= in_f,
        SupportRelation.OVERLAPPING: bool(in_f & in_g),
    }
    if not expect[rel]:
        return f"support_relation = {rel} contradicted by samples for {sf} vs {sg}"
    return None


def _bump_on(lo, hi, rng):
    return bump(lo, hi, rng.choice((1, -1)))


def _l26(rng, b):
    pts = sorted({gen.rational(rng, b) for _ in range(6)})
    while len(pts) < 6:
        pts = sorted(set(pts) | {gen.rational(rng, b)})
    spans = [(pts[0], pts[1]), (pts[2], pts[3]), (pts[4], pts[5])]
    if rng.random() < 0.3:
        spans[1] = (pts[0], pts[3])  # overlap with the first
    order = list(range(3))
    rng.shuffle(order)
    maps = [_bump_on(*spans[i], rng) for i in order]
    got = support_between(*maps)
    ss = [spans[i] for i in order]
    disjoint = all(x[1] <= y[0] or y[1] <= x[0] for i, x in enumerate(ss) for y in ss[i + 1:])
    ordered = (ss[0][1] <= ss[1][0] and ss[1][1] <= ss[2][0]) or (ss[2][1] <= ss[1][0] and ss[1][1] <= ss[0][0])
    if got != (disjoint and ordered):
        return f"support_between on spans {ss} gave {got}"
    return None


def _l27(rng, b):
    a, c = sorted({gen.rational(rng, b), gen.rational(rng, b) + b.height + 1})
    mid = (a + c) / 2
    mid2 = mid if rng.random() < 0.5 else mid + Fraction(rng.randint(-4, 4), 8)
    f, g = _bump_on(a, mid, rng), _bump_on(mid2, c, rng)
    adj = adjacent_bumps(f, g)
    if adj != (mid == mid2):
        return f"adjacent_bumps on (a,{mid}) and ({mid2},c) gave {adj}"
    if mid2 > mid and not support_between(f, _bump_on(mid, mid2, rng), g):
        return "a bump fits between non-adjacent supports but support_between disagrees"
    hull = _bump_on(a, c, rng)
    if not union_bump(f, g, hull):
        return f"union_bump rejected the hull ({a},{c})"
    if union_bump(f, g, _bump_on(a, c + 1, rng)):
        return "union_bump accepted a strictly larger support"
    return None


def _l28(rng, b):
    f = gen.canonical_bump(rng, b)
    u = gen.interpolated(rng, b)
    f = conjugate(f, u)
    span = bump_span(f)
    want = (
        BumpKind.COTERMINAL if not is_finite(span.lo) and not is_finite(span.hi)
        else BumpKind.BOUNDED if span.is_bounded
        else BumpKind.COFINAL_LEFT if not is_finite(span.lo)
        else BumpKind.COFINAL_RIGHT
    )
    if bump_kind(f) is not want:
        return f"bump_kind({f}) = {bump_kind(f)}, span {span}"
    if bump_kind(compose(f, f)) is not want:
        return "bump kind not stable under squaring"
    return None


def _cofinal(rng, b, a=None):
    a = gen.rational(rng, b) if a is None else a
    side = rng.choice((LEFT, RIGHT))
    return conjugate(cofinal_rep(a, side, rng.choice((1, -1))), PLMap.translation(0)), a, side


def _l29(rng, b):
    a = gen.rational(rng, b)
    c = a if rng.random() < 0.5 else gen.rational(rng, b)
    f = cofinal_rep(a, LEFT, rng.choice((1, -1)))
    g = cofinal_rep(c, rng.choice((LEFT, RIGHT)), rng.choice((1, -1)))
    want = a == c and bump_kind(g) is BumpKind.COFINAL_RIGHT
    if opp_support(f, g) != want:
        return f"opp_support({f}, {g}) = {not want}"
    return None


def _l210(rng, b):
    small = Bounds(b.max_breaks, 2)
    maps = [_cofinal(rng, small, Fraction(rng.randint(-2, 2)))[0] for _ in range(3)]
    x, y, z = maps
    if not codesame(x, x):
        return "codesame is not reflexive"
    if codesame(x, y) != codesame(y, x):
        return "codesame is not symmetric"
    if codesame(x, y) and codesame(y, z) and not codesame(x, z):
        return "codesame is not transitive"
    if codesame(x, y) != (decode(x) == decode(y)):
        return "codesame disagrees with endpoints"
    return None


def gauge_certificate_problem(f, g, cert, rng, n: int = 100) -> Optional[str]:
    """Check a non-gauge certificate: both maps commute with f and g, not with each other."""
    pts = [Fraction(rng.randint(-400, 400), rng.randint(1, 13)) for _ in range(n)]
    for name, h in (("h1", cert.h1), ("h2", cert.h2)):
        for x in pts:
            if h(f(x)) != f(h(x)):
                return f"{name} does not commute with f at {x}"
            if h(g(x)) != g(h(x)):
                return f"{name} does not commute with g at {x}"
    x = cert.separator
    if cert.h1(cert.h2(x)) == cert.h2(cert.h1(x)):
        return f"h1 and h2 commute at the claimed separator {x}"
    return None


def _l211(rng, b):
    g = gen.lift(rng)
    res = gauge_check(None, g)
    if isinstance(res, GaugeCandidate):
        est = res.estimate
        if not est.hi - est.lo <= Fraction(2, est.iterations):
            return "interval estimate too wide"
        return None
    if res.certificate is None:
        if isinstance(rotation_number(g), RationalCert):
            return f"rational rotation number but no certificate for {g}: {res.reason}"
        return None
    rot = res.certificate.rotation
    if g.power(rot.q)(rot.witness) != rot.witness + rot.p:
        return f"rotation certificate for {g} does not verify"
    return gauge_certificate_problem(PLMap.translation(1), g, res.certificate, rng)


def _l212(rng, b):
    f, a, side = _cofinal(rng, b)
    f = conjugate(f, gen.interpolated(rng, b))
    q = decode(f)
    if not isinstance(q, Fraction) or not rational_endpoint_check(f):
        return f"endpoint of {f} is not rational"
    span = bump_span(f)
    if q not in (span.lo, span.hi):
        return f"decode({f}) = {q} is not an endpoint of {span}"
    return None


def _t213(rng, b):
    f = gen.automorphism(rng, b)
    q = gen.rational(rng, b)
    got = decode(group_act(f, encode(q)).representative)
    if got != f(q):
        return f"group action of {f} on {q}: decoded {got}, expected {f(q)}"
    return None


def _between(rng, b):
    q, r, s = (Fraction(rng.randint(-3, 3), rng.choice((1, 2))) for _ in range(3))
    res = linear_between(encode(q), encode(r), encode(s))
    if res.holds != (q <= r <= s or s <= r <= q):
        return f"between({q},{r},{s}) = {res.holds}"
    strict = q < r < s or s < r < q
    if strict:
        t = res.witness
        if t is None or not is_automorphism(t) or t(q) != r or t(r) != s:
            return f"bad betweenness witness for ({q},{r},{s}): {t}"
    elif res.witness is not None:
        return "witness produced for a non-strict chain"
    return None


# -- section 3 ----------------------------------------------------------


def _absorber_candidate(rng, b, f):
    gaps = gap_components(f)
    if gaps and rng.random() < 0.5:
        iv = rng.choice(gaps)
        return gen.canonical_bump(rng, b) if rng.random() < 0.2 else bump(iv.lo, iv.hi, rng.choice((1, -1)))
    return gen.automorphism(rng, b)


def _l31(rng, b):
    f = gen.embedding(rng, b) if rng.random() < 0.5 else gen.endomorphism(rng, b)
    g = _absorber_candidate(rng, b, f)
    lhs = left_absorbs(g, f)
    rhs = (image(f) & support(g)).components == ()
    if lhs != rhs:
        return f"g f = f is {lhs} but image/support disjointness is {rhs} for f={f}, g={g}"
    return None


def gap_maximality_problem(f, rng, competitors: int = 50) -> Optional[str]:
    """Gap bumps absorb ``f``; overlapping absorbing bumps stay inside the gap."""
    for bb in gap_bumps(f):
        if not left_absorbs(bb, f):
            return f"gap bump {bb} does not absorb {f}"
        span = bump_span(bb)
        width = span.hi - span.lo
        found, tries = 0, 0
        while found < competitors and tries < 50 * competitors:
            tries += 1
            lo, hi = sorted(span.lo + width * Fraction(rng.randint(-15, 115), 100) for _ in range(2))
            parity = rng.choice((1, -1))
            if lo == hi or hi <= span.lo or lo >= span.hi:
                continue
            z = bump(lo, hi, parity)
            if not left_absorbs(z, f):
                continue
            found += 1
            if not support(z) <= support(bb):
                return f"absorbing bump on ({lo},{hi}) overlaps but escapes gap {span}"
        if found < competitors:
            return f"only {found} competitors found for gap {span}"
    return None


def _l32(rng, b):
    return gap_maximality_problem(gen.embedding(rng, b), rng)


def _l33(rng, b):
    side = rng.choice((LEFT, RIGHT))
    q = gen.rational(rng, b)
    if rng.random() < 0.5:
        f = gen.embedding(rng, b)
    else:
        # a single gap right at q: act1 must hold
        f = compose(gen.interpolated(rng, b), gap_inserter(q, side))
    r = f(q) if rng.random() < 0.7 else gen.rational(rng, b)
    g, h = cofinal_rep(q, side), cofinal_rep(r, side)
    res = act1_check(f, g, h)
    if res.holds and f(q) != r:
        return f"act1 holds for {f} but f({q}) != {r}"
    single_gap = len(gap_components(f)) == 1 and gap_components(f)[0].lo in (f.left_limit(q), f(q))
    if single_gap and f(q) == r and not res.holds:
        return f"act1 fails on a single-gap instance {f}, q={q}: {res.reason}"
    return None


def act2_any_side(f: PLMap, q) -> tuple[bool, str]:
    """Try act2 with codes on either side; report the first success or the reasons."""
    reasons = []
    for side in (RIGHT, LEFT):
        w = act2_witness(f, cofinal_rep(q, side), cofinal_rep(f(q), side))
        if w.holds and w.f1 == compose(w.f2, f):
            return True, side
        reasons.append(f"{side}: {w.first.reason or w.second.reason}")
    return False, "; ".join(reasons)


def _t34(rng, b):
    f = gen.embedding(rng, b)
    q = gen.rational(rng, b)
    if decode(monoid_act(f, encode(q)).representative) != f(q):
        return "monoid action decodes wrongly"
    ok, why = act2_any_side(f, q)
    return None if ok else f"no act2 witness for f={f}, q={q} ({why})"


def _l35(rng, b):
    g = gen.epimorphism(rng, b)
    ri = right_inverse(g)
    if not compose(g, ri).is_identity or not ri.is_injective:
        return f"right inverse of {g} is wrong: {ri}"
    y = gen.rational(rng, b)
    x = ri(y)
    pinned = right_inverse(g, pin=(y, x))
    if pinned(y) != x or not compose(g, pinned).is_identity:
        return "pinned right inverse is wrong"
    h = gen.endomorphism(rng, b)
    try:
        e, m = factorize(h)
    except NotRepresentable:
        if h.has_coterminal_image:
            return f"factorize refused a coterminal-image map {h}"
        return None
    if compose(e, m) != h or not m.is_injective or not e.is_surjective:
        return f"bad factorization of {h}"
    return None


def act3_any_side(f: PLMap, q) -> tuple[bool, str]:
    reasons = []
    for side in (RIGHT, LEFT):
        w = act3_witness(f, cofinal_rep(q, side), cofinal_rep(f(q), side))
        if w.holds:
            return True, side
        reasons.append(f"{side}: section={w.is_section} {w.inner.first.reason or w.inner.second.reason}")
    return False, "; ".join(reasons)


def act4_any_side(h: PLMap, q) -> tuple[Optional[bool], str]:
    """True/False for witness success, None when the factorization is not representable."""
    reasons = []
    for side in (RIGHT, LEFT):
        try:
            w = act4_witness(h, cofinal_rep(q, side), cofinal_rep(h(q), side))
        except NotRepresentable as exc:
            return None, str(exc)
        if w.holds:
            return True, side
        reasons.append(side)
    return False, "no side works: " + ", ".join(reasons)


def _t36(rng, b):
    f = gen.epimorphism(rng, b)
    q = gen.rational(rng, b)
    if decode(epi_act(f, encode(q)).representative) != f(q):
        return "epimorphism action decodes wrongly"
    ok, why = act3_any_side(f, q)
    if not ok:
        return f"no act3 witness for f={f}, q={q} ({why})"
    h = gen.endomorphism(rng, b)
    if decode(endo_act(h, encode(q)).representative) != h(q):
        return "endomorphism action decodes wrongly"
    status, why = act4_any_side(h, q)
    if status is None:
        return None if not h.has_coterminal_image else f"NotRepresentable on coterminal image {h}"
    if not h.has_coterminal_image:
        return f"factorized a bounded-image map {h}"
    return None if status else f"no act4 witness for h={h}, q={q}"


def conjugacy_problem(f: PLMap, g: PLMap, rng, n: int = 100) -> Optional[str]:
    same = pattern(f) == pattern(g)
    if is_conjugate(f, g) != same:
        return "is_conjugate disagrees with pattern equality"
    if not same:
        return None
    h = conjugator(f, g)
    for x in samples(rng, n):
        if h(f(x)) != g(h(x)):
            return f"h f != g h at {x} for f={f}, g={g}"
    return None


def _holland(rng, b):
    f, g = gen.conjugate_pair(rng, b)
    return conjugacy_problem(f, g, rng)


@dataclass(frozen=True)
class Lemma:
    id: str
    title: str
    trial: Trial


LEMMAS = {
    lem.id: lem
    for lem in (
        Lemma("L2.1", "comparability with the identity", _l21),
        Lemma("L2.2", "disjoint supports commute", _l22),
        Lemma("L2.3", "bumps have one nontrivial orbital", _l23),
        Lemma("L2.4", "orbital restrictions are bumps and multiply back", _l24),
        Lemma("L2.5", "support relations", _l25),
        Lemma("L2.6", "betweenness of supports", _l26),
        Lemma("L2.7", "adjacent bumps and union hull", _l27),
        Lemma("L2.8", "bump kinds", _l28),
        Lemma("L2.9", "opposite cofinal supports", _l29),
        Lemma("L2.10", "codesame is an equivalence", _l210),
        Lemma("L2.11", "rational rotation numbers give non-gauge certificates", _l211),
        Lemma("L2.12", "cofinal endpoints are rational", _l212),
        Lemma("T2.13", "group action on coded rationals", _t213),
        Lemma("B", "linear betweenness", _between),
        Lemma("L3.1", "gf = f iff image and support are disjoint", _l31),
        Lemma("L3.2", "gap bumps absorb and are maximal", _l32),
        Lemma("L3.3", "act1 soundness", _l33),
        Lemma("T3.4", "act2 witnesses for embeddings", _t34),
        Lemma("L3.5", "right inverses and factorization", _l35),
        Lemma("T3.6", "epimorphism and endomorphism actions", _t36),
        Lemma("HOLLAND", "conjugacy by orbital patterns", _holland),
    )
}


@dataclass
class LemmaReport:
    lemma: str
    trials: int
    seed: object
    passed: int = 0
    failed: int = 0
    errors: int = 0
    first_failure: Optional[dict] = field(default=None)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.errors == 0

    def to_record(self) -> dict:
        return {
            "lemma": self.lemma,
            "trials": self.trials,
            "seed": str(self.seed),
            "passed": self.passed,
            "failed": self.failed,
            "errors": self.errors,
            "first_failure": self.first_failure,
        }


def run_lemma(lemma_id: str, trials: int, seed, bounds: Bounds = Bounds()) -> LemmaReport:
    if lemma_id not in LEMMAS:
        raise KeyError(f"unknown lemma {lemma_id!r}; known: {', '.join(LEMMAS)}")
    lem = LEMMAS[lemma_id]
    rep = LemmaReport(lemma_id, trials, seed)
    for i in range(trials):
        rng = rng_for(seed, lemma_id, i)
        try:
            problem = lem.trial(rng, bounds)
        except Exception as exc:  # noqa: BLE001 - any crash is a reported failure
            rep.errors += 1
            problem = f"{type(exc).__name__}: {exc}"
        else:
            if problem is None:
                rep.passed += 1
                continue
            rep.failed += 1
        if rep.first_failure is None:
            rep.first_failure = {"trial": i, "detail": problem}
    return rep
