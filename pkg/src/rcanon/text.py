"""Text and JSON surface syntax for R-polynomials.

Grammar (whitespace between tokens is ignored)::

    poly     := ['-'] term { ('+'|'-') term } | '0'
    term     := [ rational '*' ] factor { '*' factor }
    factor   := 'R' '(' idx idx ',' idx idx ')'
    idx      := ('^'|'_') name
    name     := letter { letter | digit }      (bare integers only for dummies)
    rational := integer [ '/' positiveInteger ]

Row characters of dummy indices are accepted in any combination and dropped.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from fractions import Fraction

from .expr import (Dummy, Free, IndexOrder, NamedDummy, RFactor, RMonomial,
                   RPolynomial, combine_like_terms)


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ValidationError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<sym>[-+*/(),^_]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None, what=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            found = tok[1] or "end of input"
            raise ParseError(f"expected {what or value or kind}, found {found!r}", tok[2])
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.toks[self.i]
        return tok[0] == kind and (value is None or tok[1] == value)

    def poly(self):
        if self.at("int", "0") and self.toks[self.i + 1][0] == "eof":
            self.i += 1
            return []
        terms = []
        sign = 1
        if self.at("sym", "-"):
            self.take()
            sign = -1
        terms.append(self.term(sign))
        while self.at("sym", "+") or self.at("sym", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        self.take("eof", what="'+', '-' or end of input")
        return terms

    def term(self, sign):
        coeff = Fraction(sign)
        if self.at("int"):
            num = int(self.take()[1])
            if self.at("sym", "/"):
                self.take()
                tok = self.take("int", what="positive integer denominator")
                den = int(tok[1])
                if den == 0:
                    raise ParseError("zero denominator", tok[2])
                coeff *= Fraction(num, den)
            else:
                coeff *= num
            self.take("sym", "*")
        factors = [self.factor()]
        while self.at("sym", "*"):
            self.take()
            factors.append(self.factor())
        return coeff, factors

    def factor(self):
        tok = self.take("name", "R", what="'R'")
        self.take("sym", "(")
        a = self.idx()
        b = self.idx()
        if not self.at("sym", ","):
            raise ParseError("twin-seat must hold exactly two indices", self.peek()[2])
        self.take()
        c = self.idx()
        d = self.idx()
        if not self.at("sym", ")"):
            raise ParseError("twin-seat must hold exactly two indices", self.peek()[2])
        self.take()
        return tok[2], (a, b, c, d)

    def idx(self):
        if not (self.at("sym", "^") or self.at("sym", "_")):
            tok = self.peek()
            if tok[0] == "sym" and tok[1] in ",)":
                raise ParseError("twin-seat must hold exactly two indices", tok[2])
            raise ParseError(f"expected '^' or '_', found {tok[1] or 'end of input'!r}", tok[2])
        upper = self.take()[1] == "^"
        if self.at("name") or self.at("int"):
            kind, name, pos = self.take()
            return name, upper, kind == "int", pos
        tok = self.peek()
        raise ParseError(f"expected index name, found {tok[1] or 'end of input'!r}", tok[2])


def _build(raw_terms, allow_integer_dummies: bool) -> list[RMonomial]:
    monomials = []
    free_sig = None
    rows: dict[str, bool] = {}
    for coeff, factors in raw_terms:
        counts = Counter(name for _, slots in factors for name, *_ in slots)
        for name, n in counts.items():
            if n > 2:
                raise ValidationError(f"index {name!r} occurs {n} times in one term")
        seen_rows = {}
        conv = []
        for _, slots in factors:
            out = []
            for name, upper, is_int, _pos in slots:
                if counts[name] == 1:
                    if is_int:
                        raise ValidationError(f"integer index {name!r} cannot be free")
                    seen_rows[name] = upper
                    out.append(Free(name, upper))
                elif is_int:
                    if not allow_integer_dummies:
                        raise ValidationError(f"integer index name {name!r} is reserved")
                    out.append(Dummy(int(name)))
                else:
                    out.append(NamedDummy(name))
            conv.append(RFactor(tuple(out)))
        sig = frozenset(seen_rows)
        if free_sig is None:
            free_sig = sig
        elif sig != free_sig:
            raise ValidationError("terms carry different free indices")
        for name, upper in seen_rows.items():
            if rows.setdefault(name, upper) != upper:
                raise ValidationError(f"free index {name!r} has inconsistent rows across terms")
        if coeff != 0:
            monomials.append(RMonomial(coeff, tuple(conv)))
    return monomials


def parse_expression(text: str, order: IndexOrder | None = None,
                     allow_integer_dummies: bool = False) -> RPolynomial:
    """Parse and validate an R-polynomial.

    Integer index names are reserved for canonicalizer output; pass
    ``allow_integer_dummies=True`` to read such output back.
    """
    raw = _Parser(text).poly()
    return combine_like_terms(_build(raw, allow_integer_dummies), order)


def parse_json(text: str | dict, order: IndexOrder | None = None,
               allow_integer_dummies: bool = True) -> RPolynomial:
    data = json.loads(text) if isinstance(text, str) else text
    raw = []
    try:
        for term in data["terms"]:
            coeff = Fraction(term["coeff"])
            factors = []
            for fac in term["factors"]:
                if len(fac) != 4:
                    raise ParseError("a factor needs exactly four indices")
                slots = tuple((str(s["n"]), s["r"] == "u", str(s["n"]).isdigit(), None) for s in fac)
                factors.append((None, slots))
            raw.append((coeff, factors))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed JSON expression: {exc}") from exc
    return combine_like_terms(_build(raw, allow_integer_dummies), order)


def _rows_for_term(t: RMonomial):
    seen = set()
    out = []
    for f in t.factors:
        slots = []
        for s in f.slots:
            if isinstance(s, Free):
                slots.append((s.name, s.upper))
            else:
                slots.append((str(s), s not in seen))
                seen.add(s)
        out.append(slots)
    return out


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_expression(p: RPolynomial, format: str = "text") -> str:
    """Render ``p``; integer dummies go upper at first occurrence, lower at second."""
    if format == "json":
        terms = []
        for t in p:
            terms.append({
                "coeff": _fmt_coeff(t.coeff),
                "factors": [[{"n": n, "r": "u" if up else "l"} for n, up in slots]
                            for slots in _rows_for_term(t)],
            })
        return json.dumps({"terms": terms})
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    if p.is_zero():
        return "0"
    parts = []
    for i, t in enumerate(p):
        body = " * ".join(
            "R({} {}, {} {})".format(*(("^" if up else "_") + n for n, up in slots))
            for slots in _rows_for_term(t))
        c = t.coeff
        mag = abs(c)
        if i == 0:
            lead = "-" if c < 0 else ""
        else:
            lead = " - " if c < 0 else " + "
        parts.append(lead + (body if mag == 1 else f"{_fmt_coeff(mag)} * {body}"))
    return "".join(parts)

