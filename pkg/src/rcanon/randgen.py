"""Random instances for tests and benchmarks.

Monomials are built by labelling ``4n`` seats: some carry free indices, a few
optional loops pair two seats of one factor, the rest are paired at random.
Rejection sampling keeps only connected results.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .expr import SYM8, Free, NamedDummy, RFactor, RMonomial
from .graph import is_connected
from .multiterm import ROTATIONS

FREE_NAMES = "abcdefgh"


def random_monomial(rng: random.Random, degree: int, n_free: int = 0, loops: int = 0,
                    coeff: Fraction | int = 1, connected: bool = True,
                    tries: int = 1000) -> RMonomial:
    if (4 * degree - n_free) % 2:
        raise ValueError("4 * degree - n_free must be even")
    if n_free > len(FREE_NAMES):
        raise ValueError("too many free indices")
    for _ in range(tries):
        seats = [(v, s) for v in range(degree) for s in range(4)]
        rng.shuffle(seats)
        label = {}
        for k in range(n_free):
            seat = seats.pop()
            label[seat] = Free(FREE_NAMES[k], rng.random() < 0.5)
        names = iter(f"d{k}" for k in range(1, 4 * degree))
        for v in rng.sample(range(degree), min(loops, degree)):
            mine = [s for s in seats if s[0] == v]
            if len(mine) < 2:
                continue
            a, b = rng.sample(mine, 2)
            seats.remove(a)
            seats.remove(b)
            label[a] = label[b] = NamedDummy(next(names))
        while seats:
            a, b = seats.pop(), seats.pop()
            label[a] = label[b] = NamedDummy(next(names))
        factors = tuple(RFactor(tuple(label[(v, s)] for s in range(4))) for v in range(degree))
        m = RMonomial(Fraction(coeff), factors)
        if not connected or is_connected(m):
            return m
    raise RuntimeError("could not draw a connected monomial")


def random_profile(rng: random.Random, degree: int) -> dict:
    """Mixed free / Ricci / complete profiles."""
    n_free = rng.choice([k for k in range(0, 5) if (4 * degree - k) % 2 == 0])
    loops = rng.choice([0, 0, 1, 2]) if degree > 1 else 0
    return {"n_free": n_free, "loops": loops}


def monoterm_move(rng: random.Random, m: RMonomial) -> RMonomial:
    """Random factor shuffle, per-factor Sym8 move and dummy renaming."""
    factors = list(m.factors)
    rng.shuffle(factors)
    coeff = m.coeff
    out = []
    for f in factors:
        perm, sign = rng.choice(SYM8)
        coeff *= sign
        out.append(RFactor(tuple(f.slots[i] for i in perm)))
    dummies = sorted({s for f in out for s in f.slots if not isinstance(s, Free)}, key=str)
    fresh = [f"e{k}" for k in range(1, len(dummies) + 1)]
    rng.shuffle(fresh)
    rename = dict(zip(dummies, (NamedDummy(n) for n in fresh)))
    return RMonomial(coeff, tuple(RFactor(tuple(rename.get(s, s) for s in f.slots)) for f in out))


def bianchi_move(rng: random.Random, m: RMonomial) -> list[RMonomial]:
    """Replace one factor ``v`` by ``-(v') - (v'')`` with its two other rotations."""
    i = rng.randrange(m.degree)
    f = m.factors[i]
    out = []
    for seats in ROTATIONS[1:]:
        factors = list(m.factors)
        factors[i] = RFactor(tuple(f.slots[s] for s in seats))
        out.append(RMonomial(-m.coeff, tuple(factors)))
    return out


__all__ = ["random_monomial", "random_profile", "monoterm_move", "bianchi_move"]
