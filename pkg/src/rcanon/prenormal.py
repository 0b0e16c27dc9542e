"""Monoterm canonicalization: pre-normal form of a connected R-monomial.

The search keeps a pool of branches.  Each branch holds a partially built
factor sequence ``qf`` (factors carrying at least one fixed index, in their
final order), the set ``qd`` of factors not reached yet, and the next integer
to issue.  Branches run depth-first to completion one after another; a branch
is dropped as soon as its committed prefix exceeds the best sequence found.

Internally indices are integer codes: free indices ``0..F-1`` by the index
order, integer dummy ``k`` is ``F + k``, and every not-yet-renamed dummy is
``>= UNFIXED``.  Fixed indices are exactly the codes below ``UNFIXED``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, permutations

from . import kernels
from .expr import DEFAULT_ORDER, ZERO, Dummy, Free, IndexOrder, NamedDummy, RFactor, RMonomial
from .graph import is_connected

UNFIXED = 1 << 40


class NotConnectedError(ValueError):
    pass


@dataclass
class PnomStats:
    branches: int = 0
    pruned: int = 0
    completed: int = 0
    runs: int = 0

    def add(self, other: PnomStats) -> None:
        self.branches += other.branches
        self.pruned += other.pruned
        self.completed += other.completed
        self.runs += other.runs


class BranchState:
    """One branch: ``next_code`` is the code of the next integer to issue."""

    __slots__ = ("next_code", "qf", "qd")

    def __init__(self, next_code: int, qf: list, qd: list):
        self.next_code = next_code
        self.qf = qf
        self.qd = qd

    def fixed(self) -> set[int]:
        return {c for _, codes in chain(self.qf, self.qd) for c in codes if c < UNFIXED}


def _rename(codes, mapping):
    return tuple(mapping.get(c, c) for c in codes)


def _committed(qf) -> int:
    for i, (_, codes) in enumerate(qf):
        if max(codes) >= UNFIXED:
            return i
    return len(qf)


class BranchPool:
    """Branch store plus the current best candidate ``p``."""

    def __init__(self, degree: int):
        self.degree = degree
        self.branches: list[BranchState] = []
        self.K = 0
        self.best: tuple | None = None
        self.best_sign = 0
        self.zero = False
        self.pruned = 0
        self.completed = 0

    @property
    def J(self) -> int:
        return len(self.branches)

    def add(self, br: BranchState) -> None:
        self.branches.append(br)

    def exceeds_best(self, qf) -> bool:
        if self.best is None:
            return False
        n = _committed(qf)
        flat = tuple(chain.from_iterable(codes for _, codes in qf[:n]))
        return flat > self.best[:len(flat)]

    def run(self) -> None:
        while self.K < len(self.branches) and not self.zero:
            self.seridx()
            self.branches[self.K] = None  # finished; free the memory
            self.K += 1

    def seridx(self) -> None:
        """Carry branch ``K`` to completion or until it is pruned."""
        br = self.branches[self.K]
        prenormal_codes = kernels.prenormal_codes
        orient_min = kernels.orient_min
        while True:
            # Move factors that touch a fixed index from qd to qf.
            moved, rest = [], []
            for item in br.qd:
                (moved if min(item[1]) < UNFIXED else rest).append(item)
            if moved:
                w = []
                for s, codes in moved:
                    ps, pc = prenormal_codes(codes)
                    w.append((s * ps, pc))
                w.sort(key=lambda item: item[1])
                br.qf.extend(w)
                br.qd = rest

            xi = _committed(br.qf)
            if xi < len(br.qf):
                sign, codes = br.qf[xi]
                block, hits = orient_min(codes, UNFIXED, br.next_code)
                options = {}
                for k in hits:
                    perm = kernels.SYM8[k]
                    mapping = {}
                    for pos in perm[:4]:
                        c = codes[pos]
                        if c >= UNFIXED and c not in mapping:
                            mapping[c] = br.next_code + len(mapping)
                    options.setdefault(tuple(sorted(mapping.items())), (mapping, perm[4]))
                opts = list(options.values())
                if len(opts) > 1:
                    opts = self.branch(br, xi, block, opts)
                mapping, osign = opts[0]
                self._apply(br, xi, block, mapping, osign)

            if self.exceeds_best(br.qf):
                self.pruned += 1
                return
            if br.qd or _committed(br.qf) < len(br.qf):
                continue
            self._complete(br)
            return

    def _apply(self, br: BranchState, xi: int, block, mapping, osign) -> None:
        prenormal_codes = kernels.prenormal_codes
        qf = br.qf
        qf[xi] = (qf[xi][0] * osign, block)
        for j in range(xi + 1, len(qf)):
            s, codes = qf[j]
            ps, pc = prenormal_codes(_rename(codes, mapping))
            qf[j] = (s * ps, pc)
        br.qd = [(s, _rename(codes, mapping)) for s, codes in br.qd]
        br.next_code += len(mapping)

    def branch(self, br: BranchState, xi: int, block, opts):
        """Resolve a tie between renamings of ``qf[xi]`` that give the same block.

        Two options swapping the trailing pair ``b3, b4`` are decided at once
        when the next factor holding one of them already sits in ``qf``: the
        earlier holder gets the smaller integer.  Otherwise every alternative
        becomes a new branch, created only if it does not already exceed ``p``.
        Returns the option(s) to continue branch ``K`` with.
        """
        if len(opts) == 2:
            m1, m2 = opts[0][0], opts[1][0]
            swapped = [c for c in m1 if m1[c] != m2[c]]
            codes = br.qf[xi][1]
            if len(swapped) == 2 and all(codes.count(c) == 1 for c in swapped):
                b3, b4 = swapped
                p3, p4 = self._holder(br, xi, b3), self._holder(br, xi, b4)
                if p3 is not None and p3 != p4 and (p4 is None or p3 < p4):
                    return [opts[0] if m1[b3] < m1[b4] else opts[1]]
                if p4 is not None and p4 != p3 and (p3 is None or p4 < p3):
                    return [opts[0] if m1[b4] < m1[b3] else opts[1]]
        for mapping, osign in opts[1:]:
            alt = BranchState(br.next_code, list(br.qf), list(br.qd))
            self._apply(alt, xi, block, mapping, osign)
            if not self.exceeds_best(alt.qf):
                self.add(alt)
        return opts[:1]

    @staticmethod
    def _holder(br: BranchState, xi: int, code: int):
        for j in range(xi + 1, len(br.qf)):
            if code in br.qf[j][1]:
                return j
        return None

    def _complete(self, br: BranchState) -> None:
        self.completed += 1
        sign = 1
        for s, _ in br.qf:
            sign *= s
        seq = tuple(chain.from_iterable(codes for _, codes in br.qf))
        if self.best is None or seq < self.best:
            self.best, self.best_sign = seq, sign
        elif seq == self.best and sign != self.best_sign:
            self.zero = True


def _encode(m: RMonomial, order: IndexOrder):
    free_names = sorted({s.name for s in m.indices() if isinstance(s, Free)}, key=order.free_key)
    rank = {name: i for i, name in enumerate(free_names)}
    dummies: dict = {}
    coded = []
    for f in m.factors:
        out = []
        for s in f.slots:
            if isinstance(s, Free):
                out.append(rank[s.name])
            else:
                out.append(dummies.setdefault(s, UNFIXED + len(dummies)))
        coded.append(tuple(out))
    frees = {s.name: s for s in m.indices() if isinstance(s, Free)}
    return coded, [frees[n] for n in free_names]


def _initial_pool(coded, base: int):
    """Seed branches per the three leading cases, or return a finished answer."""
    n = len(coded)
    pre = []
    for codes in coded:
        s, pc = kernels.prenormal_codes(codes)
        if not s:
            return None, ZERO
        pre.append((s, pc))
    free = sorted((f for f in pre if f[1][0] < UNFIXED), key=lambda f: f[1])
    ricci = [f for f in pre if f[1][0] >= UNFIXED and len(set(f[1])) < 4]
    complete = [f for f in pre if f[1][0] >= UNFIXED and len(set(f[1])) == 4]

    pool = BranchPool(n)
    if free:
        pool.add(BranchState(base + 1, free, ricci + complete))
        return pool, None
    if ricci:
        if n == 1:
            s = pre[0][0]
            return None, (s, (base + 1, base + 2, base + 1, base + 2))
        for i, (s, codes) in enumerate(ricci):
            loop = next(c for c in codes if codes.count(c) == 2)
            b2, b3 = [c for c in codes if c != loop]
            others = ricci[:i] + ricci[i + 1:] + complete
            for x, y in ((b2, b3), (b3, b2)):
                mapping = {loop: base + 1, x: base + 2, y: base + 3}
                ps, pc = kernels.prenormal_codes(_rename(codes, mapping))
                qd = [(t, _rename(c, mapping)) for t, c in others]
                pool.add(BranchState(base + 4, [(s * ps, pc)], qd))
        return pool, None
    for i, (s, codes) in enumerate(complete):
        others = complete[:i] + complete[i + 1:]
        for sigma in permutations(range(4)):
            mapping = {codes[j]: base + 1 + sigma[j] for j in range(4)}
            ps, pc = kernels.prenormal_codes(_rename(codes, mapping))
            qd = [(t, _rename(c, mapping)) for t, c in others]
            pool.add(BranchState(base + 5, [(s * ps, pc)], qd))
    return pool, None


def canonical_connected(m: RMonomial, order: IndexOrder | None = None,
                        stats: PnomStats | None = None):
    """Pre-normal form of a connected monomial; integer dummies are allowed."""
    order = order or DEFAULT_ORDER
    coded, frees = _encode(m, order)
    base = len(frees) - 1  # integer k gets code base + k
    pool, done = _initial_pool(coded, base)
    if pool is not None:
        pool.run()
        if stats is not None:
            stats.branches += pool.J
            stats.pruned += pool.pruned
            stats.completed += pool.completed
            stats.runs += 1
        if pool.zero:
            return ZERO
        sign, seq = pool.best_sign, pool.best
    elif done is ZERO:
        return ZERO
    else:
        sign, seq = done
        if stats is not None:
            stats.runs += 1

    def decode(c):
        return frees[c] if c <= base else Dummy(c - base)

    factors = tuple(RFactor(tuple(decode(c) for c in seq[i:i + 4])) for i in range(0, len(seq), 4))
    return RMonomial(m.coeff * sign, factors)


def pnom(m: RMonomial, order: IndexOrder | None = None, stats: PnomStats | None = None):
    """Pre-normal form of a connected R-monomial given with named indices only.

    Returns an :class:`RMonomial` or ``ZERO``.
    """
    if any(isinstance(s, Dummy) for s in m.indices()):
        raise ValueError("input must not contain integer indices")
    if not is_connected(m):
        raise NotConnectedError("pnom needs a connected R-monomial")
    return canonical_connected(m, order, stats)


def branch_bound(n: int) -> int:
    return 24 * n * 2 ** n


def relabel_dummies(m: RMonomial, prefix: str = "d") -> RMonomial:
    """Rename integer dummies to fresh names so the result can be fed back in."""
    taken = {s.name for s in m.indices() if isinstance(s, Free)}
    names = {}

    def fresh(s):
        if not isinstance(s, Dummy):
            return s
        if s not in names:
            k = s.value
            while f"{prefix}{k}" in taken:
                k += 1000
            names[s] = NamedDummy(f"{prefix}{k}")
            taken.add(names[s].name)
        return names[s]

    return RMonomial(m.coeff, tuple(RFactor(tuple(fresh(s) for s in f.slots)) for f in m.factors))


__all__ = ["pnom", "canonical_connected", "BranchPool", "BranchState", "PnomStats",
           "NotConnectedError", "branch_bound", "relabel_dummies", "UNFIXED"]
