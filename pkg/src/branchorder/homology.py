"""Abelianization and Smith normal form over the integers."""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .words import Presentation

INFINITE = "infinite"


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> int | str:
        if self.free_rank > 0:
            return INFINITE
        return prod(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 1)

    def to_json(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "order": self.order,
        }


def abelianize(presentation: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    ngen = len(presentation.generators)
    rows = []
    for r in presentation.original_relators or presentation.relators:
        row = [0] * ngen
        for g, e in r.syllables:
            row[g] += e
        rows.append(row)
    return IntMatrix.from_rows(rows, ngen)


def _pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = abs(row[j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else best[1:]


def smith_normal_form(matrix: IntMatrix) -> SnfResult:
    """Invariant factors ``d_1 | d_2 | ...`` (all nonzero diagonal entries, 1s included).

    Pivot: smallest nonzero absolute value in the remaining block, ties by
    lowest (row, col).  Python ints, so no overflow.
    """
    a = matrix.to_rows()
    m, n = matrix.rows, matrix.cols
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        piv = _pivot(a, t)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, n):
                        ri[j] -= q * rt[j]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a[t:]:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                rt, ri = a[t], a[bad[0]]
                for j in range(t, n):
                    rt[j] += ri[j]
            # remainders left behind: move the smallest one into the pivot slot
            best = None
            for i in range(t, m):
                if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                    best = (abs(a[i][t]), i, t)
            for j in range(t, n):
                if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return SnfResult(tuple(diag), n - len(diag))


def h1(presentation: Presentation) -> SnfResult:
    return smith_normal_form(abelianize(presentation))


def h1_order(presentation: Presentation) -> int | str:
    """``|H_1|``, or :data:`INFINITE` when the abelianization has free rank."""
    return h1(presentation).order
