"""Presentations for the double branched covers of the links L(k_1, ..., k_n).

The link's checkerboard decomposition graph is a 2n-cycle plus a hub vertex.
Edge generators ``e_i, f_i, g_i, b_i`` and region generators ``a_i, c_i``
satisfy the local edge relations

    e_i = a_i^k_i,  b_i = c_i^-1,  f_i = (a_i^-1 c_i)^-2,  g_i = c_{i-1}^-1 a_i

and the cycle relations ``f_i^-1 e_i g_i = 1``, ``f_i^-1 b_i g_{i+1} = 1``,
indices mod n.  Eliminating ``e, f, g, c`` leaves

    < a_i, b_i | a_{i+1} = b_i^-1 a_i b_i a_i,  a_i^k_i = b_i a_i b_i b_{i-1}^-1 >.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import Presentation, Word, free_reduce


@dataclass(frozen=True)
class FamilyParams:
    k: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if len(self.k) < 1:
            raise ValueError("need n >= 1 (at least one k_i)")

    @classmethod
    def of(cls, k: Sequence[int], n: int | None = None) -> "FamilyParams":
        if n is not None and n != len(k):
            raise ValueError(f"n = {n} but {len(k)} values of k given")
        return cls(tuple(k))

    @property
    def n(self) -> int:
        return len(self.k)

    def rotated(self, shift: int = 1) -> "FamilyParams":
        s = shift % self.n
        return FamilyParams(self.k[s:] + self.k[:s])


@dataclass(frozen=True)
class DecompositionGraphSpec:
    """Hub vertex 0 joined to every vertex of the cycle 1..2n.

    ``cycle_edges[j]`` joins cycle vertex ``j+1`` to the next one around the cycle;
    weights alternate ``k_1, +1, k_2, +1, ...``.  Hub edges alternate ``-2, +1``.
    """

    n: int
    cycle_vertices: tuple[int, ...]
    cycle_edges: tuple[tuple[int, int, int], ...]
    hub_edges: tuple[tuple[int, int, int], ...]

    @property
    def cycle_edge_weights(self) -> tuple[int, ...]:
        return tuple(w for _, _, w in self.cycle_edges)

    @property
    def hub_edge_weights(self) -> tuple[int, ...]:
        return tuple(w for _, _, w in self.hub_edges)


@dataclass(frozen=True)
class PretzelCoverTag:
    """``k = (-k, ..., -k)`` realizes the n-fold cyclic branched cover of P(3, -3, -2k-1)."""

    n: int
    k: int

    def describe(self) -> str:
        return f"n={self.n}-fold cyclic branched cover of P(3,-3,{-2 * self.k - 1})"


def pretzel_tag(params: FamilyParams) -> PretzelCoverTag | None:
    if len(set(params.k)) != 1:
        return None
    return PretzelCoverTag(params.n, -params.k[0])


def _check(params: FamilyParams) -> None:
    if not isinstance(params, FamilyParams):
        raise TypeError("expected FamilyParams")
    if params.n < 1:
        raise ValueError("need n >= 1")


def build_graph_spec(params: FamilyParams) -> DecompositionGraphSpec:
    _check(params)
    n = params.n
    m = 2 * n
    verts = tuple(range(1, m + 1))
    cycle = []
    hub = []
    for v in verts:
        nxt = v % m + 1
        w = params.k[(v - 1) // 2] if v % 2 == 1 else 1
        cycle.append((v, nxt, w))
        hub.append((0, v, -2 if v % 2 == 1 else 1))
    return DecompositionGraphSpec(n, verts, tuple(cycle), tuple(hub))


def _name(letter: str, i: int, n: int) -> str:
    return f"{letter}{(i - 1) % n + 1}"


RAW_LETTERS = ("e", "f", "g", "b", "a", "c")


def raw_generator_names(n: int) -> tuple[str, ...]:
    return tuple(f"{s}{i}" for s in RAW_LETTERS for i in range(1, n + 1))


def standard_generator_names(n: int) -> tuple[str, ...]:
    return tuple(f"{s}{i}" for s in ("a", "b") for i in range(1, n + 1))


def build_raw_presentation(params: FamilyParams) -> Presentation:
    _check(params)
    n = params.n
    names = raw_generator_names(n)

    def x(s, i):
        return _name(s, i, n)

    local, cycle = [], []
    for i in range(1, n + 1):
        k = params.k[i - 1]
        local.append([(x("e", i), 1), (x("a", i), -k)])
        local.append([(x("b", i), 1), (x("c", i), 1)])
        local.append([(x("f", i), 1)] + [(x("a", i), -1), (x("c", i), 1)] * 2)
        local.append([(x("g", i), 1), (x("a", i), -1), (x("c", i - 1), 1)])
    for i in range(1, n + 1):
        cycle.append([(x("f", i), -1), (x("e", i), 1), (x("g", i), 1)])
        cycle.append([(x("f", i), -1), (x("b", i), 1), (x("g", i + 1), 1)])
    rels = [free_reduce(r, names) for r in local + cycle]
    return Presentation.build(names, rels, label="raw-brunner")


def build_standard_presentation(params: FamilyParams) -> Presentation:
    _check(params)
    n = params.n
    names = standard_generator_names(n)

    def x(s, i):
        return _name(s, i, n)

    first, second = [], []
    for i in range(1, n + 1):
        a, b = x("a", i), x("b", i)
        first.append([(x("a", i + 1), -1), (b, -1), (a, 1), (b, 1), (a, 1)])
        second.append([(a, -params.k[i - 1]), (b, 1), (a, 1), (b, 1), (x("b", i - 1), -1)])
    rels = [free_reduce(r, names) for r in first + second]
    return Presentation.build(names, rels, label="standard")


def elimination_substitution(params: FamilyParams) -> dict[str, Word]:
    """Images of every raw generator as words in ``a_i, b_i``."""
    _check(params)
    n = params.n
    names = standard_generator_names(n)

    def w(*pairs):
        return free_reduce(pairs, names)

    sub: dict[str, Word] = {}
    for i in range(1, n + 1):
        a, b, bp = _name("a", i, n), _name("b", i, n), _name("b", i - 1, n)
        sub[f"a{i}"] = w((a, 1))
        sub[f"b{i}"] = w((b, 1))
        sub[f"c{i}"] = w((b, -1))
        sub[f"e{i}"] = w((a, params.k[i - 1]))
        # (a_i^-1 c_i)^-2 with c_i = b_i^-1
        sub[f"f{i}"] = w(*([(a, -1), (b, -1)] * 2)) ** -1
        sub[f"g{i}"] = w((bp, 1), (a, 1))
    return sub


def rename_for_rotation(params: FamilyParams, shift: int = 1) -> dict[str, str]:
    """Generator renaming taking the presentation for ``params`` to that for ``params.rotated(shift)``."""
    n = params.n
    out = {}
    for s in RAW_LETTERS:
        for i in range(1, n + 1):
            out[f"{s}{i}"] = _name(s, i - shift, n)
    return out
