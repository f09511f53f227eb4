"""Bounded, proof-producing equality search in finitely presented groups."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .proofs import EqualityProof, ProofStep, lift, replay, reverse_step
from .words import (
    AlphabetMismatch,
    Presentation,
    Word,
    invert_letters,
    reduce_letters,
    syllable_count,
)


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 200_000
    max_word_length: int = 64
    max_cosets: int = 2_000_000

    def __post_init__(self):
        if min(self.max_states, self.max_word_length, self.max_cosets) <= 0:
            raise ValueError("budget fields must be positive")

    def scaled(self, factor: int) -> "SearchBudget":
        return SearchBudget(self.max_states * factor, self.max_word_length, self.max_cosets)


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class Unknown:
    """Bounded search gave up.  Says nothing about whether the words differ."""

    reason: str
    states: int = 0

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class _Rotation:
    letters: tuple
    relator: int
    rotation: int
    inverse: bool


class Rewriter:
    """Move generator for one presentation: insert relator rotations, freely reduce."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        rots: list[_Rotation] = []
        seen = set()
        for j, rel in enumerate(presentation.relators):
            for inverse in (False, True):
                base = invert_letters(rel.letters) if inverse else rel.letters
                for o in range(len(base)):
                    rho = base[o:] + base[:o]
                    if rho in seen:
                        continue
                    seen.add(rho)
                    rots.append(_Rotation(rho, j, o, inverse))
        self.rotations = rots
        self.by_first: dict[int, list[_Rotation]] = {}
        self.by_last: dict[int, list[_Rotation]] = {}
        for r in rots:
            self.by_first.setdefault(r.letters[0], []).append(r)
            self.by_last.setdefault(r.letters[-1], []).append(r)
        self.min_length = min((len(r.letters) for r in rots), default=0)

    def cancelling_moves(self, x: tuple):
        """Insertions where at least one letter cancels."""
        by_first, by_last = self.by_first, self.by_last
        end = len(x)
        empty: list = []
        for p in range(end + 1):
            a = by_first.get(-x[p - 1], empty) if p > 0 else empty
            b = by_last.get(-x[p], empty) if p < end else empty
            for r in a:
                yield _insert(x, p, r.letters), p, r
            for r in b:
                if a and r.letters[0] == -x[p - 1]:
                    continue
                yield _insert(x, p, r.letters), p, r

    def plain_moves(self, x: tuple):
        """Insertions with no cancellation at either end."""
        end = len(x)
        for p in range(end + 1):
            lo = -x[p - 1] if p > 0 else 0
            hi = -x[p] if p < end else 0
            head, tail = x[:p], x[p:]
            for r in self.rotations:
                if r.letters[0] == lo or r.letters[-1] == hi:
                    continue
                yield head + r.letters + tail, p, r


def _insert(x: tuple, p: int, rho: tuple) -> tuple:
    n = len(rho)
    i = p
    left = 0
    while left < n and i > 0 and x[i - 1] == -rho[left]:
        i -= 1
        left += 1
    j = p
    right = 0
    end = len(x)
    while left + right < n and j < end and x[j] == -rho[n - 1 - right]:
        j += 1
        right += 1
    if left + right == n:
        while i > 0 and j < end and x[i - 1] == -x[j]:
            i -= 1
            j += 1
    return x[:i] + rho[left:n - right] + x[j:]


@lru_cache(maxsize=256)
def rewriter_for(presentation: Presentation) -> Rewriter:
    return Rewriter(presentation)


def _step(r: _Rotation, p: int) -> ProofStep:
    return ProofStep(p, r.relator, r.rotation, r.inverse)


def search_letters(presentation: Presentation, u: tuple, v: tuple, budget: SearchBudget):
    """Bidirectional best-first search.  Returns forward steps ``u -> v`` or :class:`Unknown`.

    Each side pops its shortest word first (ties: cancelling moves before plain
    insertions, then lexicographic).  Plain insertions of a word are deferred
    until the frontier reaches ``len(word) + shortest relator``.
    """
    if u == v:
        return []
    rw = rewriter_for(presentation)
    if not rw.rotations:
        return Unknown("no relators", 2)
    parents = ({u: None}, {v: None})
    heaps = [[(len(u), 0, u)], [(len(v), 0, v)]]
    states = 2
    max_len = budget.max_word_length
    while heaps[0] or heaps[1]:
        if heaps[0] and (not heaps[1] or heaps[0][0][:2] <= heaps[1][0][:2]):
            side = 0
        else:
            side = 1
        _, phase, x = heapq.heappop(heaps[side])
        mine, other = parents[side], parents[1 - side]
        moves = rw.cancelling_moves(x) if phase == 0 else rw.plain_moves(x)
        for y, p, r in moves:
            if y in mine:
                continue
            if syllable_count(y) > max_len:
                continue
            mine[y] = (x, p, r)
            if y in other:
                return _assemble(presentation, parents, y)
            states += 1
            if states >= budget.max_states:
                return Unknown("max_states exhausted", states)
            heapq.heappush(heaps[side], (len(y), 0, y))
        if phase == 0:
            heapq.heappush(heaps[side], (len(x) + rw.min_length, 1, x))
    return Unknown("search space exhausted", states)


def _assemble(presentation: Presentation, parents, meet: tuple) -> list[ProofStep]:
    forward = []
    w = meet
    while parents[0][w] is not None:
        x, p, r = parents[0][w]
        forward.append(_step(r, p))
        w = x
    forward.reverse()
    w = meet
    while parents[1][w] is not None:
        x, p, r = parents[1][w]
        forward.append(reverse_step(presentation, x, _step(r, p)))
        w = x
    return forward


def prove_equal(presentation: Presentation, u: Word, v: Word,
                budget: SearchBudget = DEFAULT_BUDGET) -> EqualityProof | Unknown:
    """Search for a rewriting proof that ``u = v`` in the group.

    A returned proof has been replayed against ``presentation``.  :class:`Unknown`
    only means the bounded search failed.
    """
    if u.alphabet != presentation.alphabet or v.alphabet != presentation.alphabet:
        raise AlphabetMismatch("words must be over the presentation's alphabet")
    result = search_letters(presentation, u.letters, v.letters, budget)
    if isinstance(result, Unknown):
        return result
    proof = EqualityProof(u, v, tuple(result))
    replay(presentation, proof)
    return proof


def prove_equal_by_core(presentation: Presentation, u: Word, v: Word,
                        budget: SearchBudget = DEFAULT_BUDGET) -> EqualityProof | Unknown:
    """Prove ``u = v`` by showing the cyclic core of ``u v^-1`` is trivial.

    ``u v^-1 = c w c^-1`` with ``w`` cyclically reduced; a proof ``w -> 1`` is
    lifted into the context ``c _ c^-1`` and then ``_ v``.  Often far shorter
    words than a direct search when ``u`` and ``v`` share a long prefix or suffix.
    """
    if u.alphabet != presentation.alphabet or v.alphabet != presentation.alphabet:
        raise AlphabetMismatch("words must be over the presentation's alphabet")
    alphabet = presentation.alphabet
    w = reduce_letters(u.letters + invert_letters(v.letters))
    cut = 0
    while len(w) - 2 * cut >= 2 and w[cut] == -w[len(w) - 1 - cut]:
        cut += 1
    core = w[cut:len(w) - cut]
    result = search_letters(presentation, core, (), budget)
    if isinstance(result, Unknown):
        return result
    ident = Word.identity(alphabet)
    proof = EqualityProof(Word.from_letters(alphabet, core), ident, tuple(result))
    c = Word.from_letters(alphabet, w[:cut])
    proof = lift(presentation, proof, left=c, right=~c)
    proof = lift(presentation, proof, right=v)
    proof = EqualityProof(u, v, proof.steps)
    replay(presentation, proof)
    return proof


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verified:
    forward: tuple[EqualityProof, ...] = field(default=())
    backward: tuple[EqualityProof, ...] = field(default=())
    image: Presentation | None = None

    def __bool__(self) -> bool:
        return True


def substitute(word: Word, substitution: Mapping[str, Word], alphabet) -> Word:
    letters: list[int] = []
    for g, e in word.syllables:
        name = word.alphabet[g]
        try:
            image = substitution[name]
        except KeyError:
            raise KeyError(f"substitution has no image for {name!r}") from None
        if image.alphabet != tuple(alphabet):
            raise AlphabetMismatch(f"image of {name!r} is over a different alphabet")
        block = image.letters if e > 0 else invert_letters(image.letters)
        letters.extend(block * abs(e))
    return Word.from_letters(alphabet, letters)


def _prove_trivial(presentation: Presentation, w: Word, budget: SearchBudget):
    # cyclic core first (shorter words), plain search as fallback
    res = prove_equal_by_core(presentation, w, presentation.identity(), budget)
    if isinstance(res, Unknown):
        res = prove_equal(presentation, w, presentation.identity(), budget)
    return res


def check_tietze_equivalence(raw: Presentation, std: Presentation,
                             substitution: Mapping[str, Word],
                             budget: SearchBudget = DEFAULT_BUDGET) -> Verified | Unknown:
    """Both directions of the rewriting check between ``raw`` and ``std``.

    (a) every raw relator, substituted, is trivial in ``std``;
    (b) every ``std`` relator is trivial in the substituted image of ``raw``.
    """
    alphabet = std.alphabet
    images = [substitute(r, substitution, alphabet) for r in raw.original_relators or raw.relators]
    forward = []
    for i, w in enumerate(images):
        res = _prove_trivial(std, w, budget)
        if isinstance(res, Unknown):
            return Unknown(f"raw relator {i} not proven trivial: {res.reason}", res.states)
        forward.append(res)
    image = Presentation.build(alphabet, [w for w in images if not w.is_identity()],
                               label=f"image of {raw.label or 'raw'}")
    backward = []
    for i, r in enumerate(std.original_relators or std.relators):
        res = _prove_trivial(image, r, budget)
        if isinstance(res, Unknown):
            return Unknown(f"standard relator {i} not proven in image: {res.reason}", res.states)
        backward.append(res)
    return Verified(tuple(forward), tuple(backward), image)


def explore(presentation: Presentation, start: tuple, max_states: int, max_letters: int,
            max_syllables: int = DEFAULT_BUDGET.max_word_length) -> dict:
    """Best-first single-source exploration; returns the parent map ``word -> (parent, pos, rotation)``."""
    rw = rewriter_for(presentation)
    parents: dict = {start: None}
    if not rw.rotations:
        return parents
    heap = [(len(start), 0, start)]
    while heap and len(parents) < max_states:
        _, phase, x = heapq.heappop(heap)
        moves = rw.cancelling_moves(x) if phase == 0 else rw.plain_moves(x)
        for y, p, r in moves:
            if y in parents or len(y) > max_letters or syllable_count(y) > max_syllables:
                continue
            parents[y] = (x, p, r)
            if len(parents) >= max_states:
                break
            heapq.heappush(heap, (len(y), 0, y))
        if phase == 0 and len(x) + rw.min_length <= max_letters:
            heapq.heappush(heap, (len(x) + rw.min_length, 1, x))
    return parents


def path_steps(parents: dict, target: tuple) -> list[ProofStep]:
    """Forward steps from the exploration root to ``target``."""
    steps = []
    w = target
    while parents[w] is not None:
        x, p, r = parents[w]
        steps.append(_step(r, p))
        w = x
    steps.reverse()
    return steps
