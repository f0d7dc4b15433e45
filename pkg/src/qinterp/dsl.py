"""Text forms of maps: the ``pl{...}`` literal and a versioned JSON record.

Literal grammar (whitespace insignificant)::

    map     := "pl" "{" piece (";" piece)* [";"] "}"
    lift    := "lift" "{" piece (";" piece)* [";"] "}"
    piece   := ("(" | "[") end "," end (")" | "]") ":" affine
    end     := ["-"] ("inf" | rat)
    rat     := INT ["/" INT]
    affine  := ["+" | "-"] term (("+" | "-") term)*
    term    := rat ["*"] "x" ["/" INT]  |  "x" ["/" INT]  |  rat

Examples: ``pl{ (-inf,0): x; [0,inf): x+1 }``, ``3x/2-1/4``, ``1/2*x``.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import DomainError, DSLSyntaxError
from .intervals import NEG_INF, POS_INF, Interval, as_ext
from .plmap import PLMap

FORMAT = "qinterp.plmap"
VERSION = 1

_PUNCT = set("{}()[],;:+-*/")


def _tokenize(text: str):
    text = text.replace("−", "-")
    toks, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word == "x":
                toks.append(("x", word, i))
            elif word in ("inf", "pl", "lift"):
                toks.append((word, word, i))
            else:
                # split things like "xx" only to report the error position
                raise DSLSyntaxError(f"unexpected word {word!r}", i)
            i = j
        elif ch in _PUNCT:
            toks.append((ch, ch, i))
            i += 1
        else:
            raise DSLSyntaxError(f"unexpected character {ch!r}", i)
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = kind if kind != "eof" else "end of input"
            raise DSLSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def accept(self, kind):
        if self.peek()[0] == kind:
            return self.take()
        return None

    def rat(self) -> Fraction:
        num = Fraction(int(self.take("num")[1]))
        if self.peek()[0] == "/" and self.peek(1)[0] == "num":
            self.take("/")
            den = self.take("num")
            if int(den[1]) == 0:
                raise DSLSyntaxError("zero denominator", den[2])
            num /= int(den[1])
        return num

    def end(self):
        neg = self.accept("-") is not None
        if self.accept("inf"):
            return NEG_INF if neg else POS_INF
        v = self.rat()
        return -v if neg else v

    def term(self) -> tuple[Fraction, Fraction]:
        if self.peek()[0] == "x":
            coef = Fraction(1)
        else:
            coef = self.rat()
            if self.peek()[0] != "x" and not (self.peek()[0] == "*" and self.peek(1)[0] == "x"):
                return Fraction(0), coef
            self.accept("*")
        self.take("x")
        if self.peek()[0] == "/" and self.peek(1)[0] == "num":
            self.take("/")
            den = self.take("num")
            if int(den[1]) == 0:
                raise DSLSyntaxError("zero denominator", den[2])
            coef /= int(den[1])
        return coef, Fraction(0)

    def affine(self) -> tuple[Fraction, Fraction]:
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        s, c = self.term()
        s, c = sign * s, sign * c
        while self.peek()[0] in ("+", "-"):
            sign = 1 if self.take()[0] == "+" else -1
            ds, dc = self.term()
            s, c = s + sign * ds, c + sign * dc
        return s, c

    def piece(self):
        open_tok = self.take()
        if open_tok[0] not in ("(", "["):
            raise DSLSyntaxError("expected '(' or '['", open_tok[2])
        lo = self.end()
        self.take(",")
        hi = self.end()
        close_tok = self.take()
        if close_tok[0] not in (")", "]"):
            raise DSLSyntaxError("expected ')' or ']'", close_tok[2])
        self.take(":")
        s, c = self.affine()
        try:
            iv = Interval(lo, hi, open_tok[0] == "[", close_tok[0] == "]")
        except ValueError as exc:
            raise DomainError(f"bad piece domain at position {open_tok[2]}: {exc}") from None
        return iv, s, c

    def pieces(self, head: str):
        self.take(head)
        self.take("{")
        out = [self.piece()]
        while self.accept(";"):
            if self.peek()[0] == "}":
                break
            out.append(self.piece())
        self.take("}")
        self.take("eof")
        return out


def parse_affine(text: str) -> tuple[Fraction, Fraction]:
    p = _Parser(text)
    law = p.affine()
    p.take("eof")
    return law


def parse_map(text: str) -> PLMap:
    """Parse a ``pl{...}`` literal into a canonical map."""
    return PLMap.from_pieces(_Parser(text).pieces("pl"))


def parse_pieces(text: str, head: str = "pl"):
    return _Parser(text).pieces(head)


def fmt_rat(q) -> str:
    return str(q)


def pretty_affine(s: Fraction, c: Fraction) -> str:
    if s == 0:
        return fmt_rat(c)
    if s == 1:
        lin = "x"
    elif s.numerator == 1:
        lin = f"x/{s.denominator}"
    elif s.denominator == 1:
        lin = f"{s.numerator}x"
    else:
        lin = f"{s.numerator}x/{s.denominator}"
    if c > 0:
        return f"{lin}+{fmt_rat(c)}"
    if c < 0:
        return f"{lin}-{fmt_rat(-c)}"
    return lin


def _pretty_domain(iv: Interval) -> str:
    if iv.is_point:
        return f"[{iv.lo},{iv.hi}]"
    return str(iv)


def pretty_pieces(pieces) -> str:
    return "; ".join(f"{_pretty_domain(iv)}: {pretty_affine(s, c)}" for iv, s, c in pieces)


def pretty_map(f: PLMap) -> str:
    return "pl{ " + pretty_pieces(f.pieces) + " }"


def parse_lift(text: str):
    """Parse ``lift{ [0,a): ...; ...; [b,1): ... }`` into a circle lift."""
    from .gauge import CircleLift

    return CircleLift.from_pieces(_Parser(text).pieces("lift"))


def pretty_lift(g) -> str:
    return "lift{ " + pretty_pieces(g.pieces) + " }"


def parse_any(text: str):
    """A ``pl{...}`` map or a ``lift{...}`` circle lift, by its head."""
    return parse_lift(text) if text.lstrip().startswith("lift") else parse_map(text)


def map_to_record(f: PLMap) -> dict:
    return {
        "format": FORMAT,
        "version": VERSION,
        "pieces": [
            {
                "lo": str(iv.lo),
                "hi": str(iv.hi),
                "lo_closed": iv.lo_closed,
                "hi_closed": iv.hi_closed,
                "slope": fmt_rat(s),
                "offset": fmt_rat(c),
            }
            for iv, s, c in f.pieces
        ],
    }


def map_from_record(rec: dict) -> PLMap:
    if rec.get("format") != FORMAT or rec.get("version") != VERSION:
        raise DomainError(f"unsupported record format {rec.get('format')!r} v{rec.get('version')!r}")
    pieces = []
    for p in rec["pieces"]:
        iv = Interval(as_ext(p["lo"]), as_ext(p["hi"]), bool(p["lo_closed"]), bool(p["hi_closed"]))
        pieces.append((iv, Fraction(p["slope"]), Fraction(p["offset"])))
    return PLMap.from_pieces(pieces)


def dumps_map(f: PLMap) -> str:
    return json.dumps(map_to_record(f), sort_keys=True)


def loads_map(text: str) -> PLMap:
    return map_from_record(json.loads(text))
