"""Todd-Coxeter coset enumeration over the trivial subgroup.

HLT strategy: every live coset, in order, has every relator scanned from it
(gaps filled by new definitions), then its row is completed.  Coincidences
are processed with a union-find forwarding array, following the classical
COINCIDENCE/MERGE procedure.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass
from math import lcm

from .rewriting import DEFAULT_BUDGET, SearchBudget
from .words import Presentation, Word


class _Overflow(Exception):
    pass


@dataclass(frozen=True)
class CosetTable:
    """A complete table: ``action[g][c]`` is coset ``c`` times generator ``g``."""

    presentation: Presentation
    cosets: int
    action: tuple[tuple[int, ...], ...]
    inverse_action: tuple[tuple[int, ...], ...]
    cosets_defined: int

    @property
    def status(self) -> str:
        return "complete"

    def apply(self, coset: int, letters) -> int:
        for x in letters:
            coset = self.action[x - 1][coset] if x > 0 else self.inverse_action[-x - 1][coset]
        return coset

    def permutation(self, word: Word) -> list[int]:
        letters = word.letters
        return [self.apply(c, letters) for c in range(self.cosets)]


@dataclass(frozen=True)
class FiniteOrder:
    order: int
    table: CosetTable

    @property
    def cosets_defined(self) -> int:
        return self.table.cosets_defined

    def to_json(self) -> dict:
        return {"status": "finite", "order": self.order, "cosets_defined": self.cosets_defined}


@dataclass(frozen=True)
class Exceeded:
    """Budget ran out.  Not evidence that the group is infinite."""

    cosets_defined: int

    def to_json(self) -> dict:
        return {"status": "exceeded", "cosets_defined": self.cosets_defined}


def _column(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


class _Enumerator:
    def __init__(self, presentation: Presentation, max_cosets: int):
        self.ncols = 2 * len(presentation.generators)
        self.rels = [
            [_column(x) for x in r.letters] for r in presentation.relators if r.letters
        ]
        self.max_cosets = max_cosets
        self.table = array("l", [-1] * max(self.ncols, 1))
        self.parent = array("l", [0])
        self.n = 1
        self.queue: list[int] = []

    def define(self, c: int, x: int) -> int:
        if self.n >= self.max_cosets:
            raise _Overflow
        d = self.n
        self.n += 1
        self.table.extend(array("l", [-1]) * self.ncols)
        self.parent.append(d)
        nc = self.ncols
        self.table[c * nc + x] = d
        self.table[d * nc + (x ^ 1)] = c
        return d

    def rep(self, k: int) -> int:
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def merge(self, k: int, l: int) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            self.parent[hi] = lo
            self.queue.append(hi)

    def coincidence(self, alpha: int, beta: int) -> None:
        t, nc = self.table, self.ncols
        self.queue = []
        self.merge(alpha, beta)
        i = 0
        while i < len(self.queue):
            g = self.queue[i]
            i += 1
            for x in range(nc):
                d = t[g * nc + x]
                if d < 0:
                    continue
                xi = x ^ 1
                t[d * nc + xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if t[mu * nc + x] >= 0:
                    self.merge(nu, t[mu * nc + x])
                elif t[nu * nc + xi] >= 0:
                    self.merge(mu, t[nu * nc + xi])
                else:
                    t[mu * nc + x] = nu
                    t[nu * nc + xi] = mu

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        t, nc = self.table, self.ncols
        r = len(word)
        f, i = alpha, 0
        b, j = alpha, r - 1
        while True:
            while i <= j and t[f * nc + word[i]] >= 0:
                f = t[f * nc + word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b * nc + (word[j] ^ 1)] >= 0:
                b = t[b * nc + (word[j] ^ 1)]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f * nc + word[i]] = b
                t[b * nc + (word[i] ^ 1)] = f
                return
            self.define(f, word[i])

    def run(self) -> None:
        t, nc, parent = self.table, self.ncols, self.parent
        alpha = 0
        while alpha < self.n:
            if parent[alpha] == alpha:
                for w in self.rels:
                    self.scan_and_fill(alpha, w)
                    if parent[alpha] != alpha:
                        break
                if parent[alpha] == alpha:
                    base = alpha * nc
                    for x in range(nc):
                        if t[base + x] < 0:
                            self.define(alpha, x)
            alpha += 1


def todd_coxeter(presentation: Presentation, budget: SearchBudget = DEFAULT_BUDGET) -> FiniteOrder | Exceeded:
    """Enumerate cosets of the trivial subgroup; ``FiniteOrder(N)`` means ``|G| = N`` exactly."""
    en = _Enumerator(presentation, budget.max_cosets)
    try:
        en.run()
    except _Overflow:
        return Exceeded(en.n)
    live = [c for c in range(en.n) if en.parent[c] == c]
    index = {c: i for i, c in enumerate(live)}
    nc = en.ncols
    cols = []
    for x in range(nc):
        col = []
        for c in live:
            d = en.table[c * nc + x]
            if d < 0 or d not in index:
                raise RuntimeError("coset enumeration finished with an incomplete table")
            col.append(index[d])
        cols.append(tuple(col))
    table = CosetTable(presentation, len(live), tuple(cols[0::2]), tuple(cols[1::2]), en.n)
    if not relators_close(table):
        raise RuntimeError("coset table fails the relator replay check")
    return FiniteOrder(len(live), table)


def relators_close(table: CosetTable) -> bool:
    """Every relator traced from every coset returns to that coset."""
    for r in table.presentation.relators:
        for c in range(table.cosets):
            if table.apply(c, r.letters) != c:
                return False
    return True


def order_of_element(table: CosetTable, word: Word) -> int:
    """Order of ``word``'s permutation on the cosets (its order in the group)."""
    if not isinstance(table, CosetTable):
        raise TypeError("order_of_element needs a complete CosetTable")
    perm = table.permutation(word)
    seen = [False] * len(perm)
    result = 1
    for c in range(len(perm)):
        if seen[c]:
            continue
        length = 0
        d = c
        while not seen[d]:
            seen[d] = True
            d = perm[d]
            length += 1
        result = lcm(result, length)
    return result
