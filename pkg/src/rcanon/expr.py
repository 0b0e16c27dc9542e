"""Indices, R-factors, R-monomials and R-polynomials.

Everything here is an immutable value.  Coefficients are :class:`fractions.Fraction`
throughout; a zero coefficient never appears on a monomial, the zero polynomial is
the polynomial with no terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union


@dataclass(frozen=True)
class Free:
    """A free index.  ``upper`` records its row character."""

    name: str
    upper: bool = True

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Dummy:
    """Integer dummy introduced by the canonicalizer (value >= 1)."""

    value: int

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"integer dummy must be >= 1, got {self.value}")

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class NamedDummy:
    """Dummy index carried over from user input."""

    name: str

    def __str__(self) -> str:
        return self.name


Index = Union[Free, Dummy, NamedDummy]


class IndexOrder:
    """Total order on indices: free < integer dummies < named dummies.

    Free indices follow ``free_order`` when given (names missing from it come
    afterwards, by name); otherwise ascending name.
    """

    __slots__ = ("free_order", "_rank")

    def __init__(self, free_order: Sequence[str] | None = None):
        self.free_order = tuple(free_order) if free_order else ()
        if len(set(self.free_order)) != len(self.free_order):
            raise ValueError("free index order lists a name twice")
        self._rank = {name: i for i, name in enumerate(self.free_order)}

    def key(self, idx: Index) -> tuple:
        if isinstance(idx, Free):
            return (0, self._rank.get(idx.name, len(self._rank)), idx.name)
        if isinstance(idx, Dummy):
            return (1, idx.value, "")
        return (2, 0, idx.name)

    def free_key(self, name: str) -> tuple:
        return (self._rank.get(name, len(self._rank)), name)

    def __eq__(self, other):
        return isinstance(other, IndexOrder) and other.free_order == self.free_order

    def __hash__(self):
        return hash(self.free_order)

    def __repr__(self):
        return f"IndexOrder({list(self.free_order)!r})"


DEFAULT_ORDER = IndexOrder()


def _order(order: IndexOrder | None) -> IndexOrder:
    return DEFAULT_ORDER if order is None else order


@dataclass(frozen=True)
class RFactor:
    """R(s1 s2, s3 s4).  Never carries a sign."""

    slots: tuple[Index, Index, Index, Index]

    def __post_init__(self):
        if len(self.slots) != 4:
            raise ValueError("an R-factor has exactly four slots")

    def __iter__(self):
        return iter(self.slots)

    def __getitem__(self, i):
        return self.slots[i]

    def __str__(self) -> str:
        a, b, c, d = (str(s) for s in self.slots)
        return f"R({a} {b}, {c} {d})"

    def is_prenormal(self, order: IndexOrder | None = None) -> bool:
        k = [_order(order).key(s) for s in self.slots]
        return k[0] <= k[1] and k[2] <= k[3] and (k[0], k[1]) <= (k[2], k[3])


def R(a: Index, b: Index, c: Index, d: Index) -> RFactor:
    return RFactor((a, b, c, d))


@dataclass(frozen=True)
class RMonomial:
    coeff: Fraction
    factors: tuple[RFactor, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def degree(self) -> int:
        return len(self.factors)

    def indices(self) -> list[Index]:
        return [s for f in self.factors for s in f.slots]

    def monic(self) -> RMonomial:
        return self if self.coeff == 1 else RMonomial(Fraction(1), self.factors)

    def scaled(self, c) -> RMonomial:
        return RMonomial(self.coeff * c, self.factors)

    def free_indices(self) -> set[Free]:
        return {s for s in self.indices() if isinstance(s, Free)}

    def __str__(self) -> str:
        body = " ".join(str(f) for f in self.factors)
        return f"{self.coeff} {body}" if self.coeff != 1 else body


@dataclass(frozen=True)
class RPolynomial:
    terms: tuple[RMonomial, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"


ZERO_POLY = RPolynomial(())


class _Zero:
    """Result of canonicalizing a monomial that vanishes by symmetry."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()

# Sym8 acting on seat positions: (permutation read off the factor, sign).
SYM8: tuple[tuple[tuple[int, int, int, int], int], ...] = (
    ((0, 1, 2, 3), 1),
    ((1, 0, 2, 3), -1),
    ((0, 1, 3, 2), -1),
    ((1, 0, 3, 2), 1),
    ((2, 3, 0, 1), 1),
    ((3, 2, 0, 1), -1),
    ((2, 3, 1, 0), -1),
    ((3, 2, 1, 0), 1),
)


def factor_prenormal(f: RFactor, order: IndexOrder | None = None):
    """Return ``(sign, factor)`` with the factor pre-normal, or ``ZERO``.

    Sort each twin-seat, then sort the two pairs.  The sign counts the
    within-pair swaps; a twin-seat holding one index twice gives ``ZERO``.
    """
    key = _order(order).key
    a, b, c, d = f.slots
    if a == b or c == d:
        return ZERO
    sign = 1
    if key(b) < key(a):
        a, b = b, a
        sign = -sign
    if key(d) < key(c):
        c, d = d, c
        sign = -sign
    if (key(c), key(d)) < (key(a), key(b)):
        a, b, c, d = c, d, a, b
    return sign, RFactor((a, b, c, d))


def monic_key(m: RMonomial, order: IndexOrder | None = None) -> tuple:
    key = _order(order).key
    return tuple(key(s) for f in m.factors for s in f.slots)


def compare_monic(m1: RMonomial, m2: RMonomial, order: IndexOrder | None = None) -> int:
    """-1, 0 or 1 comparing the flattened index sequences, coefficients ignored."""
    k1, k2 = monic_key(m1, order), monic_key(m2, order)
    return (k1 > k2) - (k1 < k2)


def combine_like_terms(p: RPolynomial | Iterable[RMonomial],
                       order: IndexOrder | None = None) -> RPolynomial:
    """Merge terms with identical factor sequences, drop zeros, sort ascending."""
    acc: dict[tuple[RFactor, ...], Fraction] = {}
    for t in p:
        acc[t.factors] = acc.get(t.factors, Fraction(0)) + t.coeff
    terms = [RMonomial(c, fs) for fs, c in acc.items() if c != 0]
    terms.sort(key=lambda t: monic_key(t, order))
    return RPolynomial(tuple(terms))


def free_rows(p: RPolynomial) -> dict[str, bool]:
    rows: dict[str, bool] = {}
    for t in p:
        for s in t.indices():
            if isinstance(s, Free):
                rows[s.name] = s.upper
    return rows
