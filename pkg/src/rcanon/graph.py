"""Connection multigraphs and detailed graphs of R-monomials."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .expr import Dummy, Free, Index, RMonomial

Seat = tuple[int, int]  # (vertex, slot), both 0-based


@dataclass(frozen=True)
class DetailedGraph:
    vertex_count: int
    edges: frozenset[frozenset[Seat]]
    free_labels: tuple[tuple[Seat, Free], ...]

    def partner(self) -> dict[Seat, Seat]:
        out = {}
        for e in self.edges:
            if len(e) != 2:
                raise ValueError("malformed edge")
            a, b = sorted(e)
            out[a] = b
            out[b] = a
        return out

    def label_map(self) -> dict[Seat, Free]:
        return dict(self.free_labels)


@dataclass(frozen=True)
class ConnectionMultigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]  # sorted vertex pairs, repeated for multi-edges
    free_degree: tuple[int, ...]

    def degree(self, v: int) -> int:
        return self.free_degree[v] + sum((a == v) + (b == v) for a, b in self.edges)


@dataclass(frozen=True)
class VertexClass:
    free: tuple[int, ...]
    ricci: tuple[int, ...]
    complete: tuple[int, ...]


def _dummy_seats(m: RMonomial) -> dict[Index, list[Seat]]:
    seats: dict[Index, list[Seat]] = {}
    for v, f in enumerate(m.factors):
        for s, idx in enumerate(f.slots):
            if not isinstance(idx, Free):
                seats.setdefault(idx, []).append((v, s))
    return seats


def detailed_graph_of(m: RMonomial) -> DetailedGraph:
    edges = []
    for idx, seats in _dummy_seats(m).items():
        if len(seats) != 2:
            raise ValueError(f"dummy {idx} occurs {len(seats)} times")
        edges.append(frozenset(seats))
    labels = tuple(((v, s), idx) for v, f in enumerate(m.factors)
                   for s, idx in enumerate(f.slots) if isinstance(idx, Free))
    return DetailedGraph(m.degree, frozenset(edges), labels)


def connection_multigraph(m: RMonomial) -> ConnectionMultigraph:
    edges = sorted(tuple(sorted(v for v, _ in seats)) for seats in _dummy_seats(m).values())
    free = tuple(sum(isinstance(s, Free) for s in f.slots) for f in m.factors)
    return ConnectionMultigraph(m.degree, tuple(edges), free)


def _components(m: RMonomial) -> list[list[int]]:
    parent = list(range(m.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for seats in _dummy_seats(m).values():
        a, b = (find(v) for v, _ in seats)
        parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(m.degree):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(m: RMonomial) -> bool:
    return m.degree > 0 and len(_components(m)) == 1


def connected_components(m: RMonomial) -> tuple[Fraction, list[RMonomial]]:
    """Split into maximal connected monic submonomials plus the scalar."""
    comps = [RMonomial(1, tuple(m.factors[v] for v in group)) for group in _components(m)]
    return m.coeff, comps


def serial_index_representation(d: DetailedGraph, order: Sequence[int] | None = None) -> list[Index]:
    """Index sequence for vertex ``order``; dummies numbered by first seat occurrence."""
    if order is None:
        order = range(d.vertex_count)
    if sorted(order) != list(range(d.vertex_count)):
        raise ValueError("order must be a permutation of the vertices")
    partner = d.partner()
    labels = d.label_map()
    numbering: dict[Seat, int] = {}
    issued = 0
    out: list[Index] = []
    for v in order:
        for s in range(4):
            seat = (v, s)
            if seat in labels:
                out.append(labels[seat])
                continue
            other = partner[seat]
            if seat not in numbering:
                issued += 1
                numbering[seat] = numbering[other] = issued
            out.append(Dummy(numbering[seat]))
    return out


def classify_vertices(m: RMonomial) -> VertexClass:
    free, ricci, complete = [], [], []
    for v, f in enumerate(m.factors):
        if any(isinstance(s, Free) for s in f.slots):
            free.append(v)
        elif max(Counter(f.slots).values()) > 1:
            ricci.append(v)
        else:
            complete.append(v)
    return VertexClass(tuple(free), tuple(ricci), tuple(complete))

