"""Command line front end.

Every subcommand prints one JSON record per line with the fields
``schema``, ``command``, ``query``, ``verdict``, ``witness`` and ``lemma``.
Exit status is 0 when a verdict was computed (true or false), 1 for bad
usage or malformed input, and 2 for an internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Optional

from .dsl import parse_any, parse_map, pretty_lift, pretty_map
from .errors import DSLSyntaxError, DomainError, NotRepresentable, QInterpError
from .gauge import CircleLift, GaugeCandidate, RationalCert, gauge_check, is_lift, rotation_number
from .generators import Bounds
from .intervals import as_rat
from .interpretation import (
    LEFT,
    RIGHT,
    act2_witness,
    act3_witness,
    act4_witness,
    cofinal_rep,
    decode,
    encode,
    endo_act,
    epi_act,
    group_act,
    linear_between,
    monoid_act,
)
from .orbitals import conjugator, is_conjugate, orbitals_of, pattern
from .plmap import MapClass, PLMap, classify, image, support
from .predicates import comparability, gap_bumps, gap_components
from .verify import LEMMAS, run_lemma

SCHEMA = "qinterp.verdict/1"

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-5/2" through as a value, like "-5"
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _s(x) -> str:
    return str(x)


def _record(command: str, query: dict, verdict, witness=None, lemma: Optional[str] = None) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "query": query,
        "verdict": verdict,
        "witness": witness,
        "lemma": lemma,
    }


def _map(text: str) -> PLMap:
    return parse_map(text)


def _orbitals(f: PLMap):
    return [{"span": _s(o.span), "parity": o.parity} for o in orbitals_of(f)]


# -- subcommands ----------------------------------------------------------


def cmd_analyze(a):
    f = _map(a.map)
    cls = classify(f)
    w = {
        "map": pretty_map(f),
        "image": _s(image(f)),
        "injective": f.is_injective,
        "surjective": f.is_surjective,
    }
    if cls in (MapClass.AUTOMORPHISM, MapClass.IDENTITY):
        w["support"] = _s(support(f))
        w["orbitals"] = _orbitals(f)
        w["pattern"] = _s(pattern(f))
        w["comparability"] = [c.name for c in type(comparability(f)) if c in comparability(f)]
    if f.is_injective and cls is not MapClass.IDENTITY:
        w["gaps"] = [_s(iv) for iv in gap_components(f)]
    return [_record("analyze", {"map": a.map}, _s(cls), w, "L2.3")]


def _grid(n: int) -> list[Fraction]:
    return [Fraction(i - n // 2, 2) for i in range(n)]


def cmd_conj(a):
    f, g = _map(a.f), _map(a.g)
    same = is_conjugate(f, g)
    w = {"pattern_f": _s(pattern(f)), "pattern_g": _s(pattern(g))}
    if same and a.samples:
        h = conjugator(f, g)
        w["conjugator_table"] = [[_s(x), _s(h(x))] for x in _grid(a.samples)]
    return [_record("conj", {"f": a.f, "g": a.g}, same, w, "HOLLAND")]


def cmd_encode(a):
    c = encode(a.point)
    return [_record("encode", {"point": _s(a.point)}, _s(c.endpoint), {"representative": pretty_map(c.representative)}, "L2.12")]


def cmd_decode(a):
    f = _map(a.map)
    return [_record("decode", {"map": a.map}, _s(decode(f)), None, "L2.12")]


_ACTS = {"group": (group_act, "T2.13"), "monoid": (monoid_act, "T3.4"), "epi": (epi_act, "T3.6"), "endo": (endo_act, "T3.6")}


def cmd_act(a):
    f = _map(a.map)
    fn, lemma = _ACTS[a.mode]
    c = fn(f, encode(a.point))
    w = {"representative": pretty_map(c.representative)}
    return [_record("act", {"mode": a.mode, "map": a.map, "point": _s(a.point)}, _s(decode(c.representative)), w, lemma)]


def cmd_between(a):
    q, r, s = a.points
    res = linear_between(encode(q), encode(r), encode(s))
    w = {"map": pretty_map(res.witness)} if res.witness is not None else None
    return [_record("between", {"points": [_s(q), _s(r), _s(s)]}, res.holds, w, "B")]


def _act1_record(r) -> dict:
    return {
        "holds": r.holds,
        "reason": r.reason,
        "h_prime": pretty_map(r.h_prime) if r.h_prime is not None else None,
        "k": pretty_map(r.k) if r.k is not None else None,
    }


def _act2_record(w) -> dict:
    return {
        "f1": pretty_map(w.f1),
        "f2": pretty_map(w.f2),
        "k": pretty_map(w.k),
        "first": _act1_record(w.first),
        "second": _act1_record(w.second),
    }


def cmd_act_witness(a):
    f = _map(a.map)
    q = a.point
    g, h = cofinal_rep(q, a.side), cofinal_rep(f(q), a.side)
    query = {"mode": a.mode, "map": a.map, "point": _s(q), "side": a.side}
    if a.mode == "act2":
        w = act2_witness(f, g, h)
        return [_record("act-witness", query, w.holds, _act2_record(w), "T3.4")]
    if a.mode == "act3":
        w = act3_witness(f, g, h)
        rec = {"right_inverse": pretty_map(w.right_inverse), "is_section": w.is_section, "act2": _act2_record(w.inner)}
        return [_record("act-witness", query, w.holds, rec, "T3.6")]
    try:
        w = act4_witness(f, g, h)
    except NotRepresentable as exc:
        return [_record("act-witness", query, "NotRepresentable", {"reason": _s(exc)}, "T3.6")]
    rec = {
        "epi": pretty_map(w.epi),
        "emb": pretty_map(w.emb),
        "middle": pretty_map(w.middle),
        "act3_holds": w.act3.holds,
        "act2": _act2_record(w.act2),
    }
    return [_record("act-witness", query, w.holds, rec, "T3.6")]


def cmd_gap(a):
    f = _map(a.map)
    bumps = gap_bumps(f)
    w = {"gaps": [_s(iv) for iv in gap_components(f)], "bumps": [pretty_map(b) for b in bumps]}
    return [_record("gap", {"map": a.map}, len(bumps), w, "L3.2")]


def _rho_record(rot) -> tuple[str, dict]:
    if isinstance(rot, RationalCert):
        return "rational", {"rho": _s(rot.rho), "witness": _s(rot.witness), "p": rot.p, "q": rot.q}
    return "interval", {"lo": _s(rot.lo), "hi": _s(rot.hi), "iterations": rot.iterations}


def _dynamics(text: str):
    g = parse_any(text)
    if isinstance(g, PLMap) and is_lift(g):
        g = CircleLift.from_plmap(g)
    return g


def cmd_rho(a):
    f = _map(a.f) if a.f else None
    g = parse_any(a.map) if f is not None else _dynamics(a.map)
    rot = rotation_number(g, a.max_period, a.max_iter, f=f)
    verdict, w = _rho_record(rot)
    return [_record("rho", {"map": a.map, "f": a.f}, verdict, w, "L2.11")]


def cmd_gauge(a):
    f = _map(a.f) if a.f else None
    g = parse_any(a.g) if f is not None else _dynamics(a.g)
    res = gauge_check(f, g, a.max_period, a.max_iter)
    query = {"f": a.f, "g": a.g}
    if isinstance(res, GaugeCandidate):
        return [_record("gauge", query, "GaugeCandidate", _rho_record(res.estimate)[1], "L2.11")]
    w = {"reason": res.reason}
    cert = res.certificate
    if cert is not None:
        x = cert.separator
        w.update(
            rotation=_rho_record(cert.rotation)[1],
            interval=_s(cert.interval),
            separator=_s(x),
            h1_h2=_s(cert.h1(cert.h2(x))),
            h2_h1=_s(cert.h2(cert.h1(x))),
        )
    return [_record("gauge", query, "NotGaugePair", w, "L2.11")]


_LEMMA = {
    "analyze": "L2.3",
    "conj": "HOLLAND",
    "encode": "L2.12",
    "decode": "L2.12",
    "between": "B",
    "gap": "L3.2",
    "rho": "L2.11",
    "gauge": "L2.11",
    "fmt": "DSL",
}


def _lemma_of(a) -> Optional[str]:
    if a.command == "act":
        return _ACTS[a.mode][1]
    if a.command == "act-witness":
        return "T3.4" if a.mode == "act2" else "T3.6"
    if a.command == "verify":
        return a.lemma
    return _LEMMA.get(a.command)


def cmd_verify(a):
    ids = list(LEMMAS) if a.lemma == "all" else [a.lemma]
    bounds = Bounds(a.max_breaks, a.height)
    out = []
    for lid in ids:
        rep = run_lemma(lid, a.trials, a.seed, bounds)
        w = rep.to_record()
        w["bounds"] = {"max_breaks": bounds.max_breaks, "height": bounds.height}
        out.append(_record("verify", {"lemma": lid, "trials": a.trials, "seed": _s(a.seed)}, "pass" if rep.ok else "fail", w, lid))
    return out


def cmd_fmt(a):
    m = parse_any(a.map)
    text = pretty_lift(m) if isinstance(m, CircleLift) else pretty_map(m)
    again = parse_any(text)
    return [_record("fmt", {"map": a.map}, text, {"round_trip": again == m}, "DSL")]


# -- argument parsing -----------------------------------------------------


def _rat(text: str) -> Fraction:
    try:
        return as_rat(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _default_seed():
    return os.environ.get("QINTERP_SEED", "0")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qinterp", description="Piecewise linear maps of the rationals: analysis, interpretation and lemma checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("analyze", help="class, support, image, orbitals and pattern of a map")
    s.add_argument("map")
    s.set_defaults(run=cmd_analyze)

    s = sub.add_parser("conj", help="decide conjugacy, optionally tabulating a conjugator")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("--samples", type=int, default=0, help="tabulate the conjugator on this many half-integers")
    s.set_defaults(run=cmd_conj)

    s = sub.add_parser("encode", help="canonical cofinal bump coding a rational")
    s.add_argument("point", type=_rat)
    s.set_defaults(run=cmd_encode)

    s = sub.add_parser("decode", help="rational coded by a cofinal bump")
    s.add_argument("map")
    s.set_defaults(run=cmd_decode)

    s = sub.add_parser("act", help="act on a coded rational")
    s.add_argument("--mode", choices=sorted(_ACTS), required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--point", type=_rat, required=True)
    s.set_defaults(run=cmd_act)

    s = sub.add_parser("between", help="linear betweenness of three coded rationals")
    s.add_argument("points", type=_rat, nargs=3)
    s.set_defaults(run=cmd_between)

    s = sub.add_parser("act-witness", help="act2/act3/act4 witnesses for a map and a point")
    s.add_argument("--mode", choices=("act2", "act3", "act4"), required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--point", type=_rat, required=True)
    s.add_argument("--side", choices=(RIGHT, LEFT), default=RIGHT)
    s.set_defaults(run=cmd_act_witness)

    s = sub.add_parser("gap", help="gap bumps of an embedding")
    s.add_argument("map")
    s.set_defaults(run=cmd_gap)

    for name, fn, helptext in (("rho", cmd_rho, "rotation number of g relative to f"), ("gauge", cmd_gauge, "gauge pair test")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("map" if name == "rho" else "g", help="pl{...} or lift{...}")
        s.add_argument("--f", default=None, help="reference map (default x+1)")
        s.add_argument("--max-period", type=int, default=64)
        s.add_argument("--max-iter", type=int, default=4096)
        s.set_defaults(run=fn)

    s = sub.add_parser("verify", help="run a lemma's randomized suite")
    s.add_argument("--lemma", required=True, choices=[*LEMMAS, "all"])
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", default=None, help="defaults to $QINTERP_SEED, then 0")
    s.add_argument("--max-breaks", type=int, default=Bounds.max_breaks)
    s.add_argument("--height", type=int, default=Bounds.height)
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("fmt", help="parse and pretty-print a map")
    s.add_argument("map")
    s.set_defaults(run=cmd_fmt)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"qinterp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "seed", "") is None:
        args.seed = _default_seed()
    try:
        records = args.run(args)
    except (DSLSyntaxError, DomainError, UsageError) as exc:
        print(f"qinterp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QInterpError as exc:
        # well-formed input outside the operation's contract
        query = {k: _s(v) for k, v in vars(args).items() if k not in ("run", "command")}
        rec = _record(args.command, query, "Error", {"error": type(exc).__name__, "reason": _s(exc)}, _lemma_of(args))
        print(json.dumps(rec, sort_keys=True), file=out)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"qinterp: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    for rec in records:
        print(json.dumps(rec, sort_keys=True), file=out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
