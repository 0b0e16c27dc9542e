from __future__ import annotations

import re
from fractions import Fraction

import pytest

from rcanon import kernels
from rcanon.expr import Dummy, Free, NamedDummy, RFactor, RMonomial, RPolynomial

_NAMED = re.compile(r"^[a-z]\d+$")


def idx(tok):
    """``3`` -> integer dummy, ``"d3"`` -> named dummy, ``"a"`` -> free (upper)."""
    if isinstance(tok, int):
        return Dummy(tok)
    if _NAMED.match(tok):
        return NamedDummy(tok)
    return Free(tok)


def M(*factors, coeff=1) -> RMonomial:
    """``M("a1,23", "b4,25")`` or ``M(("d1", "d2", "d6", "d7"), ...)``."""
    out = []
    for f in factors:
        if isinstance(f, str):
            left, right = f.split(",")
            toks = [int(c) if c.isdigit() else c for c in left + right]
        else:
            toks = list(f)
        out.append(RFactor(tuple(idx(t) for t in toks)))
    return RMonomial(Fraction(coeff), tuple(out))


def P(*terms) -> RPolynomial:
    return RPolynomial(tuple(terms))


# Reference monomials (dummies named d1.., free a < b).
# FREE_CHAIN: two free factors chained through two complete ones.
# VANISHING: two Ricci factors and one complete factor, zero by symmetry.
# CLOSED_CHAIN: FREE_CHAIN with a and b contracted into one dummy.
# CROSSED_SQUARE: R(ab,cd) R(ac,bd), fully contracted.
FREE_CHAIN = M(("d1", "d2", "d6", "d7"), ("d3", "d4", "d7", "d6"), ("d1", "d5", "d2", "a"),
             ("b", "d4", "d3", "d5"))
VANISHING = M(("d1", "d2", "d3", "d4"), ("d3", "d5", "d4", "d5"), ("d1", "d6", "d2", "d6"))
CLOSED_CHAIN = M(("d1", "d2", "d6", "d7"), ("d3", "d4", "d7", "d6"), ("d1", "d5", "d2", "d8"),
             ("d8", "d4", "d3", "d5"))
CROSSED_SQUARE = M(("d1", "d2", "d3", "d4"), ("d1", "d3", "d2", "d4"))


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.using(request.param):
        yield request.param


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
