from __future__ import annotations

import json
from fractions import Fraction

import pytest

from rcanon.expr import Free, NamedDummy, RFactor, RPolynomial
from rcanon.prenormal import pnom
from rcanon.text import ParseError, ValidationError, parse_expression, parse_json, render_expression

from conftest import FREE_CHAIN, M, P


def test_parse_ricci_scalar():
    p = parse_expression("R(^a ^b, _a _b)")
    (t,) = p.terms
    x, y = NamedDummy("a"), NamedDummy("b")
    assert t.coeff == 1 and t.factors == (RFactor((x, y, x, y)),)


def test_parse_coefficient_and_rows():
    (t,) = parse_expression("-3/2 * R(^a _b, ^c _d) * R(_a ^b, _c ^d)").terms
    assert t.coeff == Fraction(-3, 2)
    assert t.factors[0] == t.factors[1]
    assert not t.free_indices()


@pytest.mark.parametrize("text", [
    "R(^a, ^b ^c ^d)",
    "R(^a ^b ^c ^d)",
    "R(a b, c d)",
    "2 * ",
    "R(^a ^b, ^c ^d) +",
])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_expression(text)


@pytest.mark.parametrize("text", [
    "R(^a ^a, ^a ^b)",
    "R(^a ^b, ^c ^d) + R(^a ^b, ^c ^e)",
    "R(^a ^b, ^c ^d) + R(_a ^b, ^c ^d)",
    "R(^1 ^2, _1 _2)",
])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        parse_expression(text)


def test_render_ricci_scalar():
    assert render_expression(P(M("12,12"))) == "R(^1 ^2, _1 _2)"


def test_render_zero():
    assert render_expression(RPolynomial(())) == "0"


def test_render_signs_and_fractions():
    p = P(M("12,34", "12,34", coeff=Fraction(1, 2)), M("12,34", "13,24", coeff=-1))
    assert render_expression(p) == \
        "1/2 * R(^1 ^2, ^3 ^4) * R(_1 _2, _3 _4) - R(^1 ^2, ^3 ^4) * R(_1 _3, _2 _4)"


def test_round_trip_free_chain_output():
    out = P(pnom(FREE_CHAIN))
    for fmt in ("text", "json"):
        text = render_expression(out, fmt)
        back = parse_json(text) if fmt == "json" else parse_expression(text, allow_integer_dummies=True)
        assert back == out


def test_free_rows_survive_round_trip():
    p = parse_expression("R(_a ^x, ^y ^z) * R(_x _y, ^b _z)")
    again = parse_expression(render_expression(p))
    rows = {s.name: s.upper for t in again for s in t.indices() if isinstance(s, Free)}
    assert rows == {"a": False, "b": True}


def test_json_shape():
    data = json.loads(render_expression(P(M("a1,b1")), "json"))
    assert data["terms"][0]["coeff"] == "1"
    assert [s["n"] for s in data["terms"][0]["factors"][0]] == ["a", "1", "b", "1"]


def test_parse_json_malformed():
    with pytest.raises(ParseError):
        parse_json('{"terms": [{"coeff": "1", "factors": [[{"n": "a", "r": "u"}]]}]}')
