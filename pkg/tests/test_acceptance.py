"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (lines are repeated in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""
import io
import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from qinterp import cli
from qinterp import generators as gen
from qinterp.dsl import parse_lift, parse_map, pretty_map
from qinterp.gauge import CircleLift, IntervalEst, NotGaugePair, RationalCert, gauge_check, rotation_number
from qinterp.interpretation import encode, linear_between
from qinterp.orbitals import conjugator, is_conjugate, orbitals_of, pattern
from qinterp.plmap import PLMap, conjugate, is_automorphism
from qinterp.verify import gauge_certificate_problem, run_lemma, samples

SEED = 7
RESULTS = []


def report(cid, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  {cid:<4} {title}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def lemma(cid, title, lemma_id, trials, max_seconds=None):
    t0 = time.perf_counter()
    rep = run_lemma(lemma_id, trials, SEED)
    dt = time.perf_counter() - t0
    ok = rep.ok and (max_seconds is None or dt < max_seconds)
    detail = f"{rep.passed}/{trials} passed, {rep.failed} failed, {rep.errors} errors, {dt:.1f}s"
    if rep.first_failure:
        detail += f"; first failure at trial {rep.first_failure['trial']}: {rep.first_failure['detail'][:160]}"
    report(cid, title, ok, detail)


def _best_time(fn, reps=20):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_c01_worked_examples():
    shift, double = parse_map("pl{ (-inf,inf): x+1 }"), parse_map("pl{ (-inf,inf): 2x }")
    got_shift = [(str(o.span), o.parity) for o in orbitals_of(shift)]
    got_double = [(str(o.span), o.parity) for o in orbitals_of(double)]
    ok = got_shift == [("(-inf,inf)", 1)] and got_double == [("(-inf,0)", -1), ("{0}", 0), ("(0,inf)", 1)]
    t = max(_best_time(lambda: orbitals_of(shift)), _best_time(lambda: orbitals_of(double)))
    report("C1", "worked examples: x+1 has one orbital, 2x has three", ok and t < 1e-3, f"slowest {t * 1e6:.0f}us")


def test_c02_holland_conjugacy():
    t0 = time.perf_counter()
    bad = []
    positives = 0
    for i in range(500):
        rng = gen.rng_for(SEED, "holland-acceptance", i)
        f = gen.automorphism(rng)
        constructed = rng.random() < 0.5
        g = conjugate(f, gen.interpolated(rng)) if constructed else gen.automorphism(rng)
        same = pattern(f) == pattern(g)
        verdict = is_conjugate(f, g)
        if verdict != same or (constructed and not verdict):
            bad.append(i)
            continue
        if verdict:
            positives += 1
            h = conjugator(f, g)
            if any(h(f(x)) != g(h(x)) for x in samples(rng, 100)):
                bad.append(i)
    dt = time.perf_counter() - t0
    report("C2", "Holland conjugacy, 500 pairs", not bad and dt < 10, f"{positives} conjugate pairs, {len(bad)} bad, {dt:.1f}s")


def test_c03_lemma_3_1():
    lemma("C3", "gf = f iff image and support disjoint, 500 pairs", "L3.1", 500)


def test_c04_lemma_3_2():
    lemma("C4", "gap bumps absorb and are maximal, 200 embeddings x 50 competitors", "L3.2", 200)


def test_c05_theorem_2_13():
    lemma("C5", "group action on coded rationals, 1000 pairs", "T2.13", 1000)


def test_c06_theorem_3_4():
    lemma("C6", "act2 witnesses for embeddings, 300 pairs", "T3.4", 300)


def test_c07_theorem_3_6():
    lemma("C7", "epi/endo actions and act3/act4 witnesses, 300 + 300", "T3.6", 300)


def test_c08_betweenness():
    pts = range(-2, 3)
    bad = 0
    for q in pts:
        for r in pts:
            for s in pts:
                res = linear_between(encode(q), encode(r), encode(s))
                if res.holds != (q <= r <= s or s <= r <= q):
                    bad += 1
                elif q < r < s or s < r < q:
                    t = res.witness
                    if t is None or not is_automorphism(t) or t(q) != r or t(r) != s:
                        bad += 1
    report("C8", "linear betweenness, 125 triples", bad == 0, f"{bad} discrepancies")


def test_c09_rotation_numbers():
    problems = []
    rot = rotation_number(PLMap.translation(Fraction(3, 2)))
    if not (isinstance(rot, RationalCert) and rot.rho == Fraction(3, 2)):
        problems.append(f"x+3/2 gave {rot}")
    g = parse_lift("lift{ [0,1/2): x/2+1/4; [1/2,1): 3x/2-1/4 }")
    rot = rotation_number(g)
    if not (isinstance(rot, RationalCert) and rot.rho == 0 and rot.witness == Fraction(1, 2) and g(rot.witness) == rot.witness):
        problems.append(f"two-slope lift gave {rot}")
    for q in range(1, 11):
        for p in range(-q, 2 * q + 1):
            est = rotation_number(CircleLift.translation(Fraction(p, q)), max_period=0, max_iter=1024)
            if not (isinstance(est, IntervalEst) and Fraction(p, q) in est and est.hi - est.lo <= Fraction(2, 1024)):
                problems.append(f"translation {p}/{q}: {est}")
    report("C9", "rotation numbers: x+3/2, two-slope lift, translations p/q", not problems, "; ".join(problems[:3]))


def test_c10_gauge_refutation():
    problems, found, i = [], 0, 0
    while found < 50 and i < 1000:
        rng = gen.rng_for(SEED, "gauge-acceptance", i)
        i += 1
        g = gen.lift(rng)
        if not isinstance(rotation_number(g), RationalCert):
            continue
        found += 1
        res = gauge_check(None, g)
        if not isinstance(res, NotGaugePair) or res.certificate is None:
            problems.append(f"{g}: {res}")
            continue
        why = gauge_certificate_problem(PLMap.translation(1), g, res.certificate, rng)
        if why:
            problems.append(f"{g}: {why}")
    ok = found == 50 and not problems
    report("C10", "non-gauge certificates for 50 lifts with rational rotation", ok, f"{found} lifts from {i} draws; " + "; ".join(problems[:2]))


def _verify_bytes(argv):
    buf = io.StringIO()
    code = cli.main(argv, out=buf)
    return code, buf.getvalue()


def test_c11_round_trip_and_determinism():
    bad = 0
    for i in range(500):
        rng = gen.rng_for(SEED, "roundtrip", i)
        kind = i % 4
        f = (gen.automorphism, gen.embedding, gen.epimorphism, gen.endomorphism)[kind](rng)
        text = pretty_map(f)
        if parse_map(text) != f or pretty_map(parse_map(text)) != text:
            bad += 1
    argv = ["verify", "--lemma", "all", "--trials", "8", "--seed", str(SEED)]
    first, second = _verify_bytes(argv), _verify_bytes(argv)
    env = dict(os.environ, PYTHONHASHSEED="12345")
    sub = subprocess.run([sys.executable, "-m", "qinterp.cli", *argv], capture_output=True, text=True, env=env)
    same = first == second and first[1] == sub.stdout and first[1]
    report("C11", "round trip of 500 maps; verify output byte-identical", bad == 0 and bool(same), f"{bad} round-trip failures, identical={bool(same)}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
