"""Independent checks: brute-force orbit minimization and exact numeric evaluation.

Nothing here shares code with the branch-and-prune search.  The numeric side
builds algebraic curvature tensors ``R_abcd = sum_k (A_ac A_bd - A_ad A_bc)``
from symmetric integer matrices; these satisfy every monoterm symmetry and the
first Bianchi identity, so equal polynomials must evaluate equally.  Equality
at a fixed dimension is a necessary condition only.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .expr import ZERO, Dummy, Free, IndexOrder, RFactor, RMonomial, RPolynomial, SYM8, DEFAULT_ORDER
from .graph import is_connected
from .linalg import apply_rules, rref

MAX_BRUTE_DEGREE = 4


def pnom_bruteforce(m: RMonomial, order: IndexOrder | None = None):
    """Minimum serial representation over all factor orders and Sym8 readings."""
    if m.degree > MAX_BRUTE_DEGREE:
        raise ValueError(f"brute force is capped at degree {MAX_BRUTE_DEGREE}")
    if not is_connected(m):
        raise ValueError("brute force expects a connected monomial")
    key = (order or DEFAULT_ORDER).key
    # Each reading of a factor as (slot keys, sign); dummies stay as objects
    # so that they can be numbered by first occurrence below.
    readings = []
    for f in m.factors:
        opts = []
        for seats, s in SYM8:
            opts.append((tuple(f.slots[i] for i in seats), s))
        readings.append(opts)
    free_key = {s: key(s) for s in m.indices() if isinstance(s, Free)}
    best = None
    signs = set()
    for perm in permutations(range(m.degree)):
        for choice in product(*(readings[v] for v in perm)):
            numbering = {}
            seq = []
            sign = 1
            for slots, s in choice:
                sign *= s
                for idx in slots:
                    if idx in free_key:
                        seq.append(free_key[idx])
                    else:
                        if idx not in numbering:
                            numbering[idx] = len(numbering) + 1
                        seq.append((1, numbering[idx], ""))
            seq = tuple(seq)
            if best is None or seq < best:
                best = seq
                signs = {sign}
            elif seq == best:
                signs.add(sign)
    if len(signs) == 2:
        return ZERO
    by_key = {k: s for s, k in free_key.items()}
    seq = [by_key[k] if k[0] == 0 else Dummy(k[1]) for k in best]
    factors = tuple(RFactor(tuple(seq[i:i + 4])) for i in range(0, len(seq), 4))
    return RMonomial(m.coeff * signs.pop(), factors)


ROTATIONS = ((0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2))


@dataclass
class BianchiSpan:
    """Row space of all three-term relations reachable from one monomial."""

    variables: list[RMonomial]
    rows: list[list[Fraction]]
    pivots: list[int]

    def contains(self, p: RPolynomial, order: IndexOrder | None = None) -> bool:
        """Whether ``p`` (pre-normal connected terms) is a combination of relations."""
        from .prenormal import canonical_connected

        col = {x: k for k, x in enumerate(self.variables)}
        v = [Fraction(0)] * len(self.variables)
        for t in p:
            c = canonical_connected(t, order)
            if c is ZERO:
                continue
            k = col.get(c.monic())
            if k is None:
                return False
            v[k] += c.coeff
        rules = {piv: row for piv, row in zip(self.pivots, self.rows)}
        return not any(apply_rules(rules, v))


def bianchi_span(f: RMonomial, order: IndexOrder | None = None, limit: int = 4000) -> BianchiSpan:
    """Close ``{f}`` under the cyclic identity on every factor.

    Monomials are identified through ``canonical_connected``; the identity is
    covariant under the monoterm symmetries, so applying it to one reading of
    each class generates every relation.
    """
    from .prenormal import canonical_connected

    if not is_connected(f):
        raise ValueError("expected a connected monomial")
    start = canonical_connected(f.monic(), order)
    if start is ZERO:
        return BianchiSpan([], [], [])
    seen = {start.monic(): 0}
    queue = [start.monic()]
    relations = []
    while queue:
        m = queue.pop()
        for i, fac in enumerate(m.factors):
            rel = {}
            for rot in ROTATIONS:
                factors = list(m.factors)
                factors[i] = RFactor(tuple(fac.slots[s] for s in rot))
                c = canonical_connected(RMonomial(Fraction(1), tuple(factors)), order)
                if c is ZERO:
                    continue
                key = c.monic()
                if key not in seen:
                    if len(seen) >= limit:
                        raise ValueError("Bianchi closure exceeds the size limit")
                    seen[key] = len(seen)
                    queue.append(key)
                rel[seen[key]] = rel.get(seen[key], Fraction(0)) + c.coeff
            relations.append(rel)
    variables = list(seen)
    rows = []
    for rel in relations:
        row = [Fraction(0)] * len(variables)
        for k, c in rel.items():
            row[k] = c
        if any(row):
            rows.append(row)
    red, piv = rref(rows, len(variables))
    return BianchiSpan(variables, red, piv)


@dataclass(frozen=True)
class CurvatureSeed:
    dimension: int
    matrices: tuple  # symmetric integer (or Fraction) d x d arrays

    @classmethod
    def random(cls, dimension: int, rng: np.random.Generator, count: int = 2, span: int = 2):
        mats = []
        for _ in range(count):
            a = rng.integers(-span, span + 1, size=(dimension, dimension))
            mats.append(a + a.T)
        return cls(dimension, tuple(mats))

    @classmethod
    def identity(cls, dimension: int):
        return cls(dimension, (np.eye(dimension, dtype=np.int64),))


def curvature_tensor(seed: CurvatureSeed) -> np.ndarray:
    d = seed.dimension
    out = np.zeros((d, d, d, d), dtype=object)
    for a in seed.matrices:
        a = np.asarray(a, dtype=object)
        if not (a == a.T).all():
            raise ValueError("seed matrices must be symmetric")
        out = out + np.einsum("ac,bd->abcd", a, a) - np.einsum("ad,bc->abcd", a, a)
    return out


def _as_int_tensor(t: np.ndarray):
    vals = t.ravel()
    if all(isinstance(v, (int, np.integer)) for v in vals):
        return t.astype(np.int64), max((abs(int(v)) for v in vals), default=0)
    return None, None


def curvature_eval(p: RPolynomial, seed: CurvatureSeed, order: IndexOrder | None = None):
    """Exact value of ``p`` on the seed tensor.

    Scalar (``Fraction``) without free indices, otherwise an object array whose
    axes follow the free indices in index order.
    """
    order = order or DEFAULT_ORDER
    rt = curvature_tensor(seed)
    rint, rmax = _as_int_tensor(rt)
    d = seed.dimension
    free_names = sorted({s.name for t in p for s in t.indices() if isinstance(s, Free)},
                        key=order.free_key)
    total = None
    for t in p:
        letters = {}
        pool = iter(string.ascii_letters)
        for name in free_names:
            letters[("f", name)] = next(pool)
        subs = []
        for f in t.factors:
            sub = ""
            for s in f.slots:
                k = ("f", s.name) if isinstance(s, Free) else ("d", s)
                if k not in letters:
                    letters[k] = next(pool)
                sub += letters[k]
            subs.append(sub)
        out = "".join(letters[("f", n)] for n in free_names)
        expr = ",".join(subs) + "->" + out
        n_dummy = len(letters) - len(free_names)
        # int64 is exact when the worst-case sum fits comfortably
        if rint is not None and (rmax or 1) ** t.degree * d ** n_dummy < 2 ** 62:
            val = np.einsum(expr, *([rint] * t.degree), optimize="greedy").astype(object)
        else:
            val = np.einsum(expr, *([rt] * t.degree), optimize="greedy")
        term = val * t.coeff
        total = term if total is None else total + term
    if total is None:
        return Fraction(0) if not free_names else np.zeros((d,) * len(free_names), dtype=object)
    if not free_names:
        return Fraction(total if not isinstance(total, np.ndarray) else total.item())
    return np.vectorize(Fraction, otypes=[object])(total)


__all__ = ["pnom_bruteforce", "bianchi_span", "BianchiSpan", "curvature_eval", "curvature_tensor", "CurvatureSeed",
           "MAX_BRUTE_DEGREE"]
