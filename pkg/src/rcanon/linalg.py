"""Exact reduced row echelon form over any field with exact arithmetic.

Entries only need ``+ - * /`` and truthiness as the zero test, so the same
code runs over ``Fraction`` and over :class:`~rcanon.qlambda.RatFunc`.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Return ``(R, pivots)``.

    Pivot columns are chosen left to right, taking the first row with a
    nonzero entry.  Rows of ``R`` are lists; zero rows are dropped.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(m):
            break
        at = next((i for i in range(top, len(m)) if m[i][col]), None)
        if at is None:
            continue
        m[top], m[at] = m[at], m[top]
        prow = m[top]
        inv = 1 / prow[col]
        for j in range(col, ncols):
            if prow[j]:
                prow[j] = prow[j] * inv
        for i, row in enumerate(m):
            if i != top and row[col]:
                factor = row[col]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = row[j] - factor * prow[j]
        pivots.append(col)
        top += 1
    return m[:top], pivots


def apply_rules(rules: Mapping[int, Sequence], v: Sequence) -> list:
    """Eliminate every pivot column of ``v`` with its rule row."""
    out = list(v)
    for p, row in rules.items():
        c = out[p]
        if c:
            for j, e in enumerate(row):
                if e:
                    out[j] = out[j] - c * e
    return out






__all__ = ["rref", "apply_rules"]
