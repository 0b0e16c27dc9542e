"""Polynomials and rational functions over Q in the extension parameters.

Polynomials are FLINT ``fmpq_mpoly`` values under the graded lexicographic
order on a fixed parameter enumeration.  :class:`RatFunc` pairs two of them
and stays reduced: the gcd is cancelled and the denominator is monic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import flint

MultiPoly = flint.fmpq_mpoly


@dataclass(frozen=True, order=True)
class ParamId:
    """``ParamId(0, 0)`` is the Ricci-product parameter; ``ParamId(i, p)`` with
    ``i >= 1`` and ``p`` in 2..4 belongs to factor position ``i``."""

    i: int
    p: int

    def __post_init__(self):
        if (self.i, self.p) != (0, 0) and (self.i < 1 or self.p not in (2, 3, 4)):
            raise ValueError(f"invalid parameter id ({self.i}, {self.p})")

    @property
    def name(self) -> str:
        return "lr" if self.i == 0 else f"l{self.i}_{self.p}"

    def __str__(self) -> str:
        return self.name


LAMBDA_R = ParamId(0, 0)


def loop_free_params(positions) -> tuple[ParamId, ...]:
    """Enumeration used for the field: ``lambda_r`` first, then by ``(i, p)``."""
    return (LAMBDA_R,) + tuple(ParamId(i, p) for i in sorted(positions) for p in (2, 3, 4))


def _fmpq(v) -> flint.fmpq:
    if isinstance(v, flint.fmpq):
        return v
    v = Fraction(v)
    return flint.fmpq(v.numerator, v.denominator)


def _fraction(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


class RatFunc:
    """Reduced quotient ``num / den`` of polynomials; ``den`` is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, reduced: bool = False):
        if den is None:
            den = num.context().constant(1)
        if not reduced:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = den.context().constant(1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num / g, den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num, den = num / lc, den / lc
        self.num = num
        self.den = den

    def _lift(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other, None, reduced=True)
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return RatFunc(self.num.context().constant(_fmpq(other)), None, reduced=True)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.den.is_one() and self.den.is_one():
            return RatFunc(self.num * o.num, self.den, reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __repr__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


class LambdaField:
    """Polynomial ring and fraction field over Q in ``params``."""

    def __init__(self, params: tuple[ParamId, ...]):
        if list(params) != sorted(set(params)):
            raise ValueError("parameters must be distinct and in canonical order")
        self.params = tuple(params)
        self.ctx = flint.fmpq_mpoly_ctx.get(tuple(q.name for q in params), "deglex")
        self._gens = self.ctx.gens()
        self._index = {q: k for k, q in enumerate(params)}

    def param(self, q: ParamId) -> MultiPoly:
        return self._gens[self._index[q]]

    def poly(self, value=0) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value
        return self.ctx.constant(_fmpq(value))

    def frac(self, value) -> RatFunc:
        if isinstance(value, RatFunc):
            return value
        return RatFunc(self.poly(value), None, reduced=True)

    def specialize(self, x, assignment: Mapping[ParamId, Fraction | int]):
        """Substitute rationals for some parameters.

        Returns an element of the same kind, or a ``Fraction`` when nothing
        symbolic is left.  Raises ``ZeroDivisionError`` if a denominator vanishes.
        """
        subs = {q.name: _fmpq(v) for q, v in assignment.items()}
        if isinstance(x, RatFunc):
            num = x.num.subs(subs) if subs else x.num
            den = x.den.subs(subs) if subs else x.den
            if den.is_zero():
                raise ZeroDivisionError("denominator vanishes under the assignment")
            out = RatFunc(num, den)
        else:
            out = x.subs(subs) if subs else x
        return to_fraction(out) if is_rational(out) else out

    def evaluate(self, x, point) -> Fraction:
        """Value at a full point (one rational per parameter)."""
        pt = [_fmpq(v) for v in point]
        if isinstance(x, RatFunc):
            den = x.den(*pt) if pt else x.den.leading_coefficient()
            if den == 0:
                raise ZeroDivisionError("denominator vanishes at the point")
            num = x.num(*pt) if pt else (x.num.leading_coefficient() if x else 0)
            return _fraction(num) / _fraction(den)
        if not pt:
            return to_fraction(x)
        return _fraction(x(*pt))


@lru_cache(maxsize=64)
def lambda_field(params: tuple[ParamId, ...]) -> LambdaField:
    return LambdaField(params)


def is_rational(x) -> bool:
    if isinstance(x, RatFunc):
        return x.num.is_constant() and x.den.is_constant()
    if isinstance(x, MultiPoly):
        return x.is_constant()
    return True


def to_fraction(x) -> Fraction:
    if isinstance(x, RatFunc):
        if not is_rational(x):
            raise ValueError("not a rational constant")
        return to_fraction(x.num)
    if isinstance(x, MultiPoly):
        if not x.is_constant():
            raise ValueError("not a rational constant")
        return _fraction(x.leading_coefficient()) if not x.is_zero() else Fraction(0)
    return Fraction(x)


def q_part_split(e: RatFunc):
    """Decompose ``e = c + f + g/h``.

    ``c`` is rational, every term of ``f`` has positive degree, ``g`` is the
    remainder of dividing the numerator by ``h`` (the denominator of ``e``,
    monic) in the graded lexicographic order.
    """
    if not isinstance(e, RatFunc):
        raise TypeError("q_part_split expects a RatFunc")
    quot, g = divmod(e.num, e.den)
    c = _fraction(quot[(0,) * quot.context().nvars()])
    f = quot - _fmpq(c)
    return c, f, g, e.den


__all__ = ["ParamId", "LAMBDA_R", "LambdaField", "RatFunc", "MultiPoly", "lambda_field",
           "loop_free_params", "is_rational", "to_fraction", "q_part_split"]
