"""Words in free groups and finite presentations.

A :class:`Word` is stored as freely reduced syllables ``(generator id, exponent)``
over a fixed alphabet of generator names.  Search code works on the letter
form instead: a tuple of nonzero ints where ``g + 1`` stands for generator
``g`` and ``-(g + 1)`` for its inverse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letters = tuple  # tuple[int, ...]


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    id: int
    name: str


# ---------------------------------------------------------------------------
# letter-level helpers (hot paths; no Word objects)


def reduce_letters(letters: Iterable[int]) -> Letters:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def letters_to_syllables(letters: Sequence[int]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for x in letters:
        g = abs(x) - 1
        e = 1 if x > 0 else -1
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def syllables_to_letters(syllables: Iterable[tuple[int, int]]) -> Letters:
    out: list[int] = []
    for g, e in syllables:
        x = g + 1 if e > 0 else -(g + 1)
        out.extend([x] * abs(e))
    return tuple(out)


def syllable_count(letters: Sequence[int]) -> int:
    n = 0
    prev = 0
    for x in letters:
        if abs(x) != prev:
            n += 1
            prev = abs(x)
    return n


def cyclic_reduce_letters(letters: Sequence[int]) -> Letters:
    w = reduce_letters(letters)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def letter_key(letters: Sequence[int]) -> tuple:
    """Deterministic order: shorter first, then generator id, positive before inverse."""
    return (len(letters), tuple((abs(x), x < 0) for x in letters))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A freely reduced word over ``alphabet``.  The empty word is the identity."""

    alphabet: tuple[str, ...]
    syllables: tuple[tuple[int, int], ...] = ()
    _letters: Letters = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self._letters is None:
            object.__setattr__(self, "_letters", syllables_to_letters(self.syllables))

    @classmethod
    def from_letters(cls, alphabet: Sequence[str], letters: Sequence[int]) -> "Word":
        red = reduce_letters(letters)
        return cls(tuple(alphabet), letters_to_syllables(red), red)

    @classmethod
    def identity(cls, alphabet: Sequence[str]) -> "Word":
        return cls(tuple(alphabet), (), ())

    @property
    def letters(self) -> Letters:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, m: int) -> "Word":
        base = self if m >= 0 else invert(self)
        return Word.from_letters(self.alphabet, base.letters * abs(m))

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            name = self.alphabet[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def to_json(self) -> list:
        return [[self.alphabet[g], e] for g, e in self.syllables]

    def sort_key(self) -> tuple:
        return letter_key(self._letters)


def _gen_index(alphabet: Sequence[str], g) -> int:
    if isinstance(g, Generator):
        g = g.id
    if isinstance(g, str):
        try:
            return alphabet.index(g)
        except ValueError:
            raise AlphabetMismatch(f"unknown generator {g!r}") from None
    if not 0 <= g < len(alphabet):
        raise AlphabetMismatch(f"generator id {g} out of range")
    return g


def free_reduce(raw: Iterable[tuple], alphabet: Sequence[str]) -> Word:
    """Freely reduce ``(generator, exponent)`` pairs; generators given by name, id or Generator."""
    alphabet = tuple(alphabet)
    letters: list[int] = []
    for g, e in raw:
        gi = _gen_index(alphabet, g)
        x = gi + 1 if e > 0 else -(gi + 1)
        letters.extend([x] * abs(int(e)))
    return Word.from_letters(alphabet, letters)


def concat(u: Word, v: Word) -> Word:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet} vs {v.alphabet}")
    return Word.from_letters(u.alphabet, u.letters + v.letters)


def invert(w: Word) -> Word:
    return Word.from_letters(w.alphabet, invert_letters(w.letters))


def conjugate(w: Word, by: Word) -> Word:
    """``by^-1 w by``."""
    return concat(concat(invert(by), w), by)


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(?:\^\(?(-?\d+)\)?)?$")


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse whitespace/``*``-separated tokens such as ``"b1^-1 a1 b1 a1"``; ``"1"`` is the identity."""
    alphabet = tuple(alphabet)
    raw = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse token {tok!r}")
        name, exp = m.group(1), m.group(2)
        raw.append((name, int(exp) if exp is not None else 1))
    return free_reduce(raw, alphabet)


def word_from_json(data: Sequence, alphabet: Sequence[str]) -> Word:
    return free_reduce([(name, int(e)) for name, e in data], alphabet)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators (each relator ``r`` means ``r = 1``).

    ``relators`` are cyclically reduced; ``original_relators`` keeps the freely
    reduced forms the presentation was built from.  Proof steps index into
    ``relators``.
    """

    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    label: str = ""
    original_relators: tuple[Word, ...] = ()

    @classmethod
    def build(cls, names: Sequence[str], relators: Iterable, label: str = "") -> "Presentation":
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        gens = tuple(Generator(i, s) for i, s in enumerate(names))
        originals = []
        for r in relators:
            if isinstance(r, Word):
                if r.alphabet != names:
                    raise AlphabetMismatch("relator over a different alphabet")
                originals.append(r)
            elif isinstance(r, str):
                originals.append(parse_word(r, names))
            else:
                originals.append(free_reduce(r, names))
        reduced = tuple(
            Word.from_letters(names, cyclic_reduce_letters(r.letters)) for r in originals
        )
        return cls(gens, reduced, label, tuple(originals))

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def identity(self) -> Word:
        return Word.identity(self.alphabet)

    def generator_word(self, name: str) -> Word:
        return free_reduce([(name, 1)], self.alphabet)

    def to_json(self) -> dict:
        rels = self.original_relators or self.relators
        return {
            "generators": list(self.alphabet),
            "relators": [r.to_json() for r in rels],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        names = tuple(data["generators"])
        rels = [word_from_json(r, names) for r in data["relators"]]
        return cls.build(names, rels, data.get("label", ""))

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in (self.original_relators or self.relators))
        return f"< {', '.join(self.alphabet)} | {rels} >"
