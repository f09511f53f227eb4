"""Equality proofs: replayable rewriting certificates.

A step inserts ``c · rho · c^-1`` at a letter position of the current word and
freely reduces, where ``rho`` is a cyclic rotation of a relator (or of its
inverse) and ``c`` is an optional conjugator.  Every such insertion multiplies
by a conjugate of a relator, so a replaying chain ``start -> ... -> end``
proves ``start = end`` in the presented group.

Search code only ever emits steps with an empty conjugator; conjugators appear
when proofs are reversed or moved into a larger context.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import (
    Letters,
    Presentation,
    Word,
    invert_letters,
    reduce_letters,
    syllables_to_letters,
    word_from_json,
)


class ProofError(ValueError):
    """A proof failed to replay."""


@dataclass(frozen=True)
class ProofStep:
    position: int
    relator: int
    rotation: int = 0
    inverse: bool = False
    conjugator: Letters = ()

    def to_json(self, alphabet: Sequence[str]) -> dict:
        d = {"pos": self.position, "rel": self.relator, "rot": self.rotation, "inv": self.inverse}
        if self.conjugator:
            d["conj"] = Word.from_letters(alphabet, self.conjugator).to_json()
        return d

    @classmethod
    def from_json(cls, data: dict, alphabet: Sequence[str]) -> "ProofStep":
        conj = ()
        if data.get("conj"):
            conj = word_from_json(data["conj"], alphabet).letters
        return cls(int(data["pos"]), int(data["rel"]), int(data.get("rot", 0)),
                   bool(data.get("inv", False)), conj)


@dataclass(frozen=True)
class EqualityProof:
    start: Word
    end: Word
    steps: tuple[ProofStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "end": self.end.to_json(),
            "steps": [s.to_json(self.start.alphabet) for s in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict, alphabet: Sequence[str]) -> "EqualityProof":
        return cls(
            word_from_json(data["start"], alphabet),
            word_from_json(data["end"], alphabet),
            tuple(ProofStep.from_json(s, alphabet) for s in data["steps"]),
        )


# ---------------------------------------------------------------------------
# replay


def relator_rotation(relator: Sequence[int], rotation: int, inverse: bool) -> Letters:
    base = invert_letters(relator) if inverse else tuple(relator)
    if not base or not 0 <= rotation < len(base):
        raise ProofError(f"rotation {rotation} invalid for relator of length {len(base)}")
    return base[rotation:] + base[:rotation]


def apply_step(presentation: Presentation, word: Sequence[int], step: ProofStep) -> Letters:
    rels = presentation.relators
    if not 0 <= step.relator < len(rels):
        raise ProofError(f"relator index {step.relator} out of range")
    if not 0 <= step.position <= len(word):
        raise ProofError(f"position {step.position} outside word of length {len(word)}")
    ngen = len(presentation.generators)
    if any(x == 0 or abs(x) > ngen for x in step.conjugator):
        raise ProofError("conjugator uses letters outside the alphabet")
    rho = relator_rotation(rels[step.relator].letters, step.rotation, step.inverse)
    c = tuple(step.conjugator)
    inserted = c + rho + invert_letters(c)
    return reduce_letters(tuple(word[: step.position]) + inserted + tuple(word[step.position:]))


def trace(presentation: Presentation, start: Sequence[int], steps: Sequence[ProofStep]) -> list[Letters]:
    """All intermediate words, ``start`` first."""
    words = [reduce_letters(start)]
    for step in steps:
        words.append(apply_step(presentation, words[-1], step))
    return words


def replay(presentation: Presentation, proof: EqualityProof) -> None:
    """Raise :class:`ProofError` unless the proof replays from start to end."""
    if proof.start.alphabet != presentation.alphabet or proof.end.alphabet != presentation.alphabet:
        raise ProofError("proof alphabet differs from presentation")
    start = syllables_to_letters(proof.start.syllables)
    end = syllables_to_letters(proof.end.syllables)
    if reduce_letters(start) != start or reduce_letters(end) != end:
        raise ProofError("proof endpoints are not freely reduced")
    final = trace(presentation, start, proof.steps)[-1]
    if final != end:
        raise ProofError("replay does not terminate at the stated end word")


def check_proof(presentation: Presentation, proof: EqualityProof) -> bool:
    try:
        replay(presentation, proof)
    except ProofError:
        return False
    return True


# ---------------------------------------------------------------------------
# proof algebra


def insertion_detail(x: Sequence[int], p: int, rho: Sequence[int]) -> tuple[Letters, int, int]:
    """Insert ``rho`` at ``p`` in reduced ``x``.

    Returns ``(result, left, extra)``: ``left`` letters of ``rho`` cancelled
    against ``x[:p]``; ``extra`` letters of ``x[:p]`` cancelled against
    ``x[p:]`` after ``rho`` vanished entirely (0 otherwise).
    """
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
    extra = 0
    if left + right == n:
        while i > 0 and j < end and x[i - 1] == -x[j]:
            i -= 1
            j += 1
            extra += 1
    return tuple(x[:i]) + tuple(rho[left:n - right]) + tuple(x[j:]), left, extra


def reverse_step(presentation: Presentation, x: Sequence[int], step: ProofStep) -> ProofStep:
    """A step taking ``apply_step(x, step)`` back to ``x``."""
    rel = presentation.relators[step.relator].letters
    n = len(rel)
    inv_rot = (n - step.rotation) % n
    if step.conjugator:
        conj = reduce_letters(tuple(x[: step.position]) + tuple(step.conjugator))
        return ProofStep(0, step.relator, inv_rot, not step.inverse, conj)
    rho = relator_rotation(rel, step.rotation, step.inverse)
    _, left, extra = insertion_detail(x, step.position, rho)
    q = step.position - left - extra
    return ProofStep(q, step.relator, (inv_rot + n - left) % n, not step.inverse,
                     tuple(x[q: step.position - left]))


def compose(first: EqualityProof, second: EqualityProof) -> EqualityProof:
    if first.end != second.start:
        raise ValueError("proofs do not chain")
    return EqualityProof(first.start, second.end, first.steps + second.steps)


def reverse(presentation: Presentation, proof: EqualityProof) -> EqualityProof:
    words = trace(presentation, proof.start.letters, proof.steps)
    steps = [reverse_step(presentation, words[i], s) for i, s in enumerate(proof.steps)]
    return EqualityProof(proof.end, proof.start, tuple(reversed(steps)))


def lift(presentation: Presentation, proof: EqualityProof, left: Word | None = None,
         right: Word | None = None) -> EqualityProof:
    """Proof of ``left·start·right = left·end·right`` from a proof of ``start = end``."""
    alphabet = presentation.alphabet
    lw = left.letters if left is not None else ()
    rw = right.letters if right is not None else ()
    words = trace(presentation, proof.start.letters, proof.steps)
    steps = []
    for x, step in zip(words, proof.steps):
        joined = lw + x + rw
        if reduce_letters(joined) == joined:
            steps.append(ProofStep(step.position + len(lw), step.relator, step.rotation,
                                   step.inverse, step.conjugator))
        else:
            conj = reduce_letters(lw + x[: step.position] + tuple(step.conjugator))
            steps.append(ProofStep(0, step.relator, step.rotation, step.inverse, conj))
    start = Word.from_letters(alphabet, lw + words[0] + rw)
    end = Word.from_letters(alphabet, lw + words[-1] + rw)
    return EqualityProof(start, end, tuple(steps))


def trivial_proof(word: Word) -> EqualityProof:
    return EqualityProof(word, word, ())
