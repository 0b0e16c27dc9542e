"""Bianchi canonicalization: extension, elimination rules and the normal form.

A connected pre-normal monomial ``f`` of degree ``n`` with ``r`` looped
factors spans, together with all Bianchi rotations of its loop-free factors,
a family of ``3**(n - r)`` monomials.  Their pre-normal forms are the unknowns
of a linear system whose reduced row echelon form (over Q) gives elimination
rules: every leading unknown is rewritten as a combination of smaller ones.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Protocol

from .expr import (DEFAULT_ORDER, ZERO, Dummy, Free, IndexOrder, RFactor, RMonomial, RPolynomial,
                   combine_like_terms, free_rows, monic_key)
from .graph import connected_components, is_connected
from .linalg import rref
from .prenormal import NotConnectedError, PnomStats, canonical_connected
from .qlambda import LAMBDA_R, ParamId, is_rational, lambda_field, loop_free_params, q_part_split, \
    to_fraction

# Seat orders of the three Bianchi rotations v(S1S2,S3S4), v(S1S3,S4S2), v(S1S4,S2S3).
ROTATIONS = ((0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2))
# Direct system ranges: S2 on seats 2,3 for earlier factors, bipartitions for later ones.
_S2 = ((0, 1, 2, 3), (0, 2, 1, 3))
_BP = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


def _permute(f: RFactor, seats) -> RFactor:
    return RFactor(tuple(f.slots[s] for s in seats))


def has_loop(f: RFactor) -> bool:
    return len(set(f.slots)) < 4


def loop_free_positions(f: RMonomial) -> list[int]:
    """1-based positions of the factors without a loop."""
    return [i + 1 for i, fac in enumerate(f.factors) if not has_loop(fac)]


def _canon(factors, order):
    """``(sign, monic key monomial)`` of a connected product, or ``None`` for zero."""
    out = canonical_connected(RMonomial(Fraction(1), tuple(factors)), order)
    if out is ZERO:
        return None
    return out.coeff, out


def _check_input(f: RMonomial, order: IndexOrder) -> RMonomial:
    if not is_connected(f):
        raise NotConnectedError("expected a connected monomial")
    m = f.monic()
    canon = canonical_connected(m, order)
    if canon is ZERO or canon != m:
        raise ValueError("expected a monic pre-normal monomial")
    return m


@dataclass
class ExtensionPolynomial:
    """``terms`` maps monic pre-normal monomials to polynomial coefficients."""

    terms: dict
    n: int
    r: int
    raw_count: int
    positions: tuple[int, ...]
    lam: object  # LambdaField

    def keys_ascending(self, order: IndexOrder | None = None) -> list[RMonomial]:
        return sorted(self.terms, key=lambda m: monic_key(m, order))


def ext(f: RMonomial, order: IndexOrder | None = None) -> ExtensionPolynomial:
    order = order or DEFAULT_ORDER
    f = _check_input(f, order)
    positions = loop_free_positions(f)
    lam = lambda_field(loop_free_params(positions))
    lr = lam.param(LAMBDA_R)
    terms: dict = {}
    raw = 0
    for choice in product(range(3), repeat=len(positions)):
        raw += 1
        factors = list(f.factors)
        coeff = lr
        for pos, rot in zip(positions, choice):
            factors[pos - 1] = _permute(factors[pos - 1], ROTATIONS[rot])
            coeff = coeff * lam.param(ParamId(pos, rot + 2))
        got = _canon(factors, order)
        if got is None:
            continue
        sign, key = got
        key = key.monic()
        terms[key] = terms.get(key, lam.poly()) + coeff * int(sign)
    terms = {k: v for k, v in terms.items() if v}
    return ExtensionPolynomial(terms, f.degree, f.degree - len(positions), raw,
                               tuple(positions), lam)


@dataclass
class EliminationRuleSet:
    """Complete RREF over Q.  ``variables[0]`` is the greatest unknown ``x1``."""

    variables: tuple[RMonomial, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]
    equations: int = 0
    method: str = ""
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self._index = {v: k for k, v in enumerate(self.variables)}

    def __eq__(self, other):
        if not isinstance(other, EliminationRuleSet):
            return NotImplemented
        return (self.variables, self.matrix, self.pivots) == \
            (other.variables, other.matrix, other.pivots)

    @property
    def rules(self) -> dict[RMonomial, list[tuple[Fraction, RMonomial]]]:
        """Leading unknown -> right-hand side, as ``(coefficient, unknown)`` pairs."""
        out = {}
        for row, p in zip(self.matrix, self.pivots):
            out[self.variables[p]] = [(-c, self.variables[j])
                                      for j, c in enumerate(row) if j != p and c]
        return out

    def is_variable(self, m: RMonomial) -> bool:
        return m.monic() in self._index

    def is_leading(self, m: RMonomial) -> bool:
        k = self._index.get(m.monic())
        return k is not None and k in self.pivots

    def rewrite(self, m: RMonomial) -> list[RMonomial]:
        """``m`` after applying the rules, as a list of terms."""
        k = self._index.get(m.monic())
        if k is None or k not in self.pivots:
            return [m]
        row = self.matrix[self.pivots.index(k)]
        return [RMonomial(-c * m.coeff, self.variables[j].factors)
                for j, c in enumerate(row) if j != k and c]


def _ruleset(variables, rows, equations, method) -> EliminationRuleSet:
    mat, piv = rref([[Fraction(c) for c in r] for r in rows], len(variables))
    return EliminationRuleSet(tuple(variables), tuple(tuple(r) for r in mat), tuple(piv),
                              equations, method)


def _unknowns(g: ExtensionPolynomial, order) -> list[RMonomial]:
    return list(reversed(g.keys_ascending(order)))


def rebe(f: RMonomial, order: IndexOrder | None = None, g: ExtensionPolynomial | None = None,
         projection: str = "point", arithmetic: str = "evaluate"):
    """Complete Q-RREF of the Bianchi relations, via the symbolic extension.

    Each round row-reduces the current system over Q(Lambda), keeps the
    Q-part of every row, and carries the non-Q remainder of the columns from
    the first non-constant one onwards into the next round.

    ``projection`` selects how the Q-part is taken.  ``"point"`` uses the
    value of the row at a base point where its denominator does not vanish
    (the constant term for polynomial rows).  ``"split"`` uses the constant
    ``c`` of :func:`q_part_split` entry by entry; that map is not Q-linear on
    rational functions and can yield rows that are not Bianchi relations.

    ``arithmetic`` selects how the Q(Lambda) matrices of the point
    projection are held.  ``"symbolic"`` keeps explicit polynomial rows.
    ``"evaluate"`` (default) keeps each round as a function of the parameter
    point: its RREF is computed numerically at any generic point, which is the
    symbolic RREF evaluated there.  Kept rows are exact either way; only the
    test for constant columns is probabilistic in the evaluated form.
    """
    order = order or DEFAULT_ORDER
    g = g if g is not None else ext(f, order)
    lam = g.lam
    xs = _unknowns(g, order)
    H = []
    for j in g.positions:
        assign = {LAMBDA_R: 1, ParamId(j, 2): 1, ParamId(j, 3): 1, ParamId(j, 4): 1}
        if projection == "point":
            # Row j is homogeneous of degree 1 in the parameters of every other
            # factor, so fixing lambda(i, 2) = 1 only rescales rows.
            assign.update({ParamId(i, 2): 1 for i in g.positions})
        H.append([lam.frac(lam.specialize(g.terms[x], assign)) for x in xs])
    if projection == "point" and arithmetic == "evaluate":
        C = _rebe_rounds_evaluated([[e.num for e in row] for row in H], len(xs), lam)
    elif projection == "point" and arithmetic == "symbolic":
        C = _rebe_rounds_point([[e.num for e in row] for row in H], len(xs), lam)
    elif projection == "split":
        C = _rebe_rounds_split(H, len(xs), lam)
    else:
        raise ValueError(f"unknown projection/arithmetic {projection!r}/{arithmetic!r}")
    return _ruleset(xs, C, len(H), "rebe")


class _EvaluatedRound:
    """A round's Q(Lambda)-RREF, held as a function of the parameter point.

    Round 0 reduces the specialized system; round ``t + 1`` reduces
    ``Q_t(x)[k:] - Q_t(base)[k:]``.  Values are memoized per point.
    """

    def __init__(self, lam, width, rows=None, parent=None, k=0, base=None):
        self.lam = lam
        self.width = width
        self.rows = rows
        self.parent = parent
        self.k = k
        self.base = base
        self.pivots: list[int] | None = None
        self._memo: dict = {}

    def raw(self, pt) -> tuple[list, list[int]]:
        key = tuple(pt)
        hit = self._memo.get(key)
        if hit is None:
            if self.parent is None:
                mat = [[self.lam.evaluate(e, pt) if not e.is_zero() else Fraction(0) for e in row]
                       for row in self.rows]
            else:
                prev, piv = self.parent.raw(pt)
                if piv != self.parent.pivots:
                    hit = ([], None)
                    self._memo[key] = hit
                    return hit
                mat = [[x - y for x, y in zip(r[self.k:], b[self.k:])]
                       for r, b in zip(prev, self.base)]
            hit = rref(mat, self.width)
            self._memo[key] = hit
        return hit

    def at(self, pt):
        """RREF values at ``pt``, or ``None`` where ``pt`` is not generic."""
        mat, piv = self.raw(pt)
        return mat if piv == self.pivots else None


def _rebe_rounds_evaluated(H, m, lam) -> list[list[Fraction]]:
    n = len(lam.params)
    rng = random.Random(104729 + m)

    def sample():
        return [rng.randint(-10**9, 10**9) for _ in range(n)]

    C: list[list[Fraction]] = []
    q = 0
    rnd = _EvaluatedRound(lam, m, rows=H)
    while True:
        b = rnd.width
        points = [sample() for _ in range(3)]
        # the generic rank is the largest one seen; pivots go with it
        found = [rnd.raw(pt) for pt in points]
        rank = max(len(mat) for mat, _ in found)
        rnd.pivots = next(piv for mat, piv in found if len(mat) == rank)
        vals = [mat for mat, piv in found if piv == rnd.pivots]
        while len(vals) < 3:
            mat, piv = rnd.raw(sample())
            if piv == rnd.pivots:
                vals.append(mat)
        if not rank:
            break
        k = next((j for j in range(b)
                  if any(v[i][j] != vals[0][i][j] for v in vals[1:] for i in range(rank))), b)
        base = None
        for pt in [[0] * n, list(range(1, n + 1))] + [sample() for _ in range(256)]:
            base = rnd.at(pt)
            if base is not None:
                break
        if base is None:
            raise ArithmeticError("no base point found")
        C.extend([Fraction(0)] * q + row for row in base)
        q += k
        if k >= b:
            break
        rnd = _EvaluatedRound(lam, b - k, parent=rnd, k=k, base=base)
    return C


def _base_point(lam, polys):
    """First candidate point where no given polynomial vanishes: the origin, then fixed others."""
    n = len(lam.params)
    candidates = [[0] * n, list(range(1, n + 1))]
    rng = random.Random(n)
    candidates += [[rng.randint(-997, 997) for _ in range(n)] for _ in range(256)]
    for pt in candidates:
        if all(p(*pt) != 0 for p in polys):
            return pt
    raise ArithmeticError("no base point found")


def _rebe_rounds_point(H, m, lam) -> list[list[Fraction]]:
    # Rows are carried as polynomial multiples of the Q(Lambda) rows; scaling
    # a row does not change the next round's RREF.
    C: list[list[Fraction]] = []
    q, b = 0, m
    while True:
        const = _constant_rref(H, b, lam)
        if const is not None:
            C.extend([Fraction(0)] * q + row for row in const)
            break
        M, piv = _poly_rref(H, b)
        if not M:
            break
        dens = [row[p] for row, p in zip(M, piv)]
        k = next((j for j in range(b)
                  if any(not e.is_zero() and e * d.leading_coefficient() != d * e.leading_coefficient()
                         for e, d in ((row[j], d) for row, d in zip(M, dens)))), b)
        pt = _base_point(lam, dens)
        nxt = []
        for row, d in zip(M, dens):
            dval = lam.evaluate(d, pt)
            vals = [lam.evaluate(e, pt) / dval if not e.is_zero() else Fraction(0) for e in row]
            C.append([Fraction(0)] * q + vals)
            nxt.append(_primitive([row[j] - d * lam.poly(vals[j]) for j in range(k, b)]))
        q += k
        if k >= b:
            break
        H, b = nxt, b - k
    return C


def _poly_rref(H, b):
    """Gauss-Jordan over Q[Lambda] with primitive rows.

    Row ``i`` of the Q(Lambda)-RREF is ``M[i] / M[i][piv[i]]``.  Multipliers
    are stripped of their gcd and every updated row is made primitive, which
    keeps entries close to their reduced size.
    """
    m = [list(r) for r in H]
    piv: list[int] = []
    top = 0
    for col in range(b):
        if top == len(m):
            break
        at = next((i for i in range(top, len(m)) if not m[i][col].is_zero()), None)
        if at is None:
            continue
        m[top], m[at] = m[at], m[top]
        prow = m[top]
        for i, row in enumerate(m):
            lead = row[col]
            if i == top or lead.is_zero():
                continue
            p, l = prow[col], lead
            g = p.gcd(l)
            if not g.is_one():
                p, l = p / g, l / g
            m[i] = _primitive([p * e - l * f for e, f in zip(row, prow)])
        piv.append(col)
        top += 1
    return m[:top], piv


def _constant_rref(H, b, lam):
    """The Q(Lambda)-RREF of ``H`` if all its entries are rational, else ``None``.

    A candidate is read off the RREF at two sample points and then certified
    exactly: every row of ``H`` must reduce to zero against it, and the rank at
    a sample point must match, so both row spaces coincide.
    """
    n = len(lam.params)
    rng = random.Random(7919 + b)
    guesses = []
    for _ in range(2):
        pt = [rng.randint(-10**6, 10**6) for _ in range(n)]
        R, piv = rref([[lam.evaluate(e, pt) for e in row] for row in H], b)
        guesses.append((R, piv))
    (G, piv), other = guesses
    if (G, piv) != other:
        return None
    for row in H:
        rest = list(row)
        for g, p in zip(G, piv):
            c = rest[p]
            if not c.is_zero():
                rest = [e - c * lam.poly(x) if x else e for e, x in zip(rest, g)]
        if any(not e.is_zero() for e in rest):
            return None
    return G


def _primitive(row):
    """Divide a polynomial row by the gcd of its entries."""
    g = None
    for e in row:
        if not e.is_zero():
            g = e if g is None else g.gcd(e)
            if g.is_constant():
                return row
    if g is None:
        return row
    return [e / g for e in row]


def _rebe_rounds_split(H, m, lam) -> list[list[Fraction]]:
    C: list[list[Fraction]] = []
    q, b = 0, m
    while True:
        Q, _ = rref(H, b)
        if not Q:
            break
        k = next((j for j in range(b) if any(not is_rational(row[j]) for row in Q)), b)
        nxt = []
        for row in Q:
            vals = [to_fraction(e) for e in row[:k]]
            rest = []
            for e in row[k:]:
                c = q_part_split(e)[0]
                vals.append(c)
                rest.append(e - c)
            C.append([Fraction(0)] * q + vals)
            nxt.append(rest)
        q += k
        if k >= b:
            break
        H, b = nxt, b - k
    return C


def direct_bianchi_rref(f: RMonomial, order: IndexOrder | None = None,
                        g: ExtensionPolynomial | None = None):
    """Reference system: every three-term relation of the triangular family."""
    order = order or DEFAULT_ORDER
    f = _check_input(f, order)
    g = g if g is not None else ext(f, order)
    xs = _unknowns(g, order)
    col = {x: k for k, x in enumerate(xs)}
    positions = loop_free_positions(f)
    rows = []
    for at, i in enumerate(positions):
        ranges = [_S2] * at + [(None,)] + [_BP] * (len(positions) - at - 1)
        for choice in product(*ranges):
            base = list(f.factors)
            for pos, seats in zip(positions, choice):
                if seats is not None:
                    base[pos - 1] = _permute(base[pos - 1], seats)
            row = [Fraction(0)] * len(xs)
            for rot in ROTATIONS:
                factors = list(base)
                factors[i - 1] = _permute(base[i - 1], rot)
                got = _canon(factors, order)
                if got is None:
                    continue
                sign, key = got
                row[col[key.monic()]] += sign
            rows.append(row)
    return _ruleset(xs, rows, len(rows), "direct")


def rule_set(f: RMonomial, method: str = "rebe", order: IndexOrder | None = None):
    if method == "rebe":
        return rebe(f, order)
    if method == "direct":
        return direct_bianchi_rref(f, order)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------- normal form

class ComponentCache(Protocol):
    def get(self, key: RMonomial) -> RPolynomial | None: ...

    def put(self, key: RMonomial, value: RPolynomial) -> None: ...


@dataclass
class NormalStats:
    pnom: PnomStats = field(default_factory=PnomStats)
    systems: int = 0
    equations: int = 0
    cache_hits: int = 0
    seconds: dict = field(default_factory=dict)

    def tick(self, name: str, start: float) -> None:
        self.seconds[name] = self.seconds.get(name, 0.0) + time.perf_counter() - start


def _offset(s, shift: int):
    return Dummy(s.value + shift) if isinstance(s, Dummy) else s


def assemble(coeff: Fraction, comps, order: IndexOrder, rows: dict[str, bool]) -> RMonomial:
    """Sort components and shift each one's integers past the previous ones."""
    comps = sorted(comps, key=lambda c: monic_key(c, order))
    factors = []
    shift = 0
    for c in comps:
        top = 0
        for fac in c.factors:
            slots = []
            for s in fac.slots:
                if isinstance(s, Dummy):
                    top = max(top, s.value)
                elif isinstance(s, Free):
                    s = Free(s.name, rows.get(s.name, s.upper))
                slots.append(_offset(s, shift))
            factors.append(RFactor(tuple(slots)))
        shift += top
    return RMonomial(coeff, tuple(factors))


def _prenormal_terms(p: RPolynomial, order: IndexOrder, stats: PnomStats | None):
    """Steps 1 and 2: ``(coefficient, [monic pre-normal components])`` per term."""
    if any(isinstance(s, Dummy) for t in p for s in t.indices()):
        raise ValueError("input must not contain integer indices")
    out = []
    for t in p:
        coeff, comps = connected_components(t)
        canon = []
        for c in comps:
            got = canonical_connected(c, order, stats)
            if got is ZERO:
                break
            coeff *= got.coeff
            canon.append(got.monic())
        else:
            out.append((coeff, canon))
    return out


def prenormal_polynomial(p: RPolynomial, order: IndexOrder | None = None,
                         stats: PnomStats | None = None) -> RPolynomial:
    """Monoterm canonical form of a polynomial (no Bianchi rewriting)."""
    order = order or DEFAULT_ORDER
    rows = free_rows(p)
    terms = [assemble(c, comps, order, rows) for c, comps in _prenormal_terms(p, order, stats)]
    return combine_like_terms(terms, order)


def normal(p: RPolynomial, method: str = "rebe", order: IndexOrder | None = None,
           cache: ComponentCache | None = None, stats: NormalStats | None = None,
           rules_cache: dict | None = None) -> RPolynomial:
    """Normal form: monoterm canonicalization followed by Bianchi elimination.

    ``rules_cache`` maps monic components to their rule sets and may be shared
    between calls with the same index order and method.
    """
    order = order or DEFAULT_ORDER
    stats = stats if stats is not None else NormalStats()
    rules_cache = rules_cache if rules_cache is not None else {}
    rows = free_rows(p)

    start = time.perf_counter()
    terms = _prenormal_terms(p, order, stats.pnom)
    # combine like terms before rewriting
    merged: dict = {}
    for coeff, comps in terms:
        comps = tuple(sorted(comps, key=lambda c: monic_key(c, order)))
        merged[comps] = merged.get(comps, Fraction(0)) + coeff
    stats.tick("pre-normal", start)

    start = time.perf_counter()
    rewritten: dict = {}
    for comps, coeff in merged.items():
        if coeff == 0:
            continue
        for c in comps:
            if c in rewritten:
                continue
            if c.degree == 1:
                rewritten[c] = [c]
                continue
            hit = cache.get(c) if cache is not None else None
            if hit is not None:
                stats.cache_hits += 1
                rewritten[c] = list(hit.terms)
                continue
            rs = rules_cache.get(c)
            if rs is None:
                rs = rule_set(c, method, order)
                stats.systems += 1
                stats.equations += rs.equations
                for v in rs.variables:
                    rules_cache[v] = rs
            rewritten[c] = rs.rewrite(c)
            if cache is not None:
                cache.put(c, RPolynomial(tuple(rewritten[c])))
    stats.tick("rules", start)

    start = time.perf_counter()
    out = []
    for comps, coeff in merged.items():
        if coeff == 0:
            continue
        for pick in product(*(rewritten[c] for c in comps)):
            c = coeff
            for t in pick:
                c *= t.coeff
            out.append(assemble(c, [t.monic() for t in pick], order, rows))
    result = combine_like_terms(out, order)
    stats.tick("substitute", start)
    return result


__all__ = ["ext", "rebe", "direct_bianchi_rref", "rule_set", "normal", "prenormal_polynomial",
           "ExtensionPolynomial", "EliminationRuleSet", "NormalStats", "ComponentCache",
           "assemble", "loop_free_positions", "ROTATIONS"]
