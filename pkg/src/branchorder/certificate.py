"""Non-left-orderability certificates and their independent checker.

A certificate is a binary decision tree over signs of witness elements.  Each
leaf holds a chain of elements that are positive on that branch (a witness
decided positive, or the inverse of one decided negative) together with a
rewriting proof that their product is the identity.  A positive cone is closed
under products and excludes the identity, so every leaf is a contradiction;
if the tree is total, no positive cone (hence no left order) exists.

The checker below uses nothing from the search code: only word arithmetic and
proof replay.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .proofs import EqualityProof, ProofError, ProofStep, replay
from .words import Presentation, Word, reduce_letters, word_from_json


@dataclass(frozen=True)
class Leaf:
    chain: tuple[Word, ...]
    steps: tuple[ProofStep, ...]

    def to_json(self) -> dict:
        alphabet = self.chain[0].alphabet if self.chain else ()
        return {"chain": [w.to_json() for w in self.chain],
                "proof": [s.to_json(alphabet) for s in self.steps]}


@dataclass(frozen=True)
class Branch:
    element: Word
    positive: "Node"
    negative: "Node"

    def to_json(self) -> dict:
        return {"element": self.element.to_json(),
                "positive": self.positive.to_json(),
                "negative": self.negative.to_json()}


Node = Union[Branch, Leaf]


@dataclass(frozen=True)
class NloCertificate:
    witness: tuple[Word, ...]
    tree: Node
    generators: tuple[str, ...]
    label: str = ""
    method: str = ""

    def leaves(self) -> list[Leaf]:
        out, stack = [], [self.tree]
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf):
                out.append(node)
            else:
                stack.extend([node.negative, node.positive])
        return out

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "label": self.label,
            "method": self.method,
            "witness": [w.to_json() for w in self.witness],
            "tree": self.tree.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "NloCertificate":
        alphabet = tuple(data["generators"])

        def node(d):
            if d is None:
                return None
            if "chain" in d:
                return Leaf(tuple(word_from_json(w, alphabet) for w in d["chain"]),
                            tuple(ProofStep.from_json(s, alphabet) for s in d["proof"]))
            return Branch(word_from_json(d["element"], alphabet), node(d.get("positive")),
                          node(d.get("negative")))

        return cls(tuple(word_from_json(w, alphabet) for w in data["witness"]),
                   node(data["tree"]), alphabet, data.get("label", ""), data.get("method", ""))


@dataclass(frozen=True)
class Accept:
    leaves: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Reject:
    reason: str
    path: tuple[tuple[str, str], ...] = ()

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        where = " / ".join(f"{e}:{s}" for e, s in self.path) or "root"
        return f"{self.reason} (at {where})"


class _Bad(Exception):
    def __init__(self, reason, path):
        super().__init__(reason)
        self.reason = reason
        self.path = path


def verify_certificate(presentation: Presentation, cert: NloCertificate) -> Accept | Reject:
    alphabet = presentation.alphabet
    if tuple(cert.generators) != alphabet:
        return Reject("certificate generators differ from the presentation")
    witness = {w.letters for w in cert.witness}
    count = [0]

    def walk(node, decided: dict, path: tuple):
        if isinstance(node, Branch):
            e = node.element
            if e.alphabet != alphabet or e.letters not in witness:
                raise _Bad("branch element is not a witness", path)
            if e.letters in decided:
                raise _Bad("element decided twice on one path", path)
            for sign, child in (("+", node.positive), ("-", node.negative)):
                if child is None:
                    raise _Bad("decision tree is not total", path + ((str(e), sign),))
                walk(child, {**decided, e.letters: sign}, path + ((str(e), sign),))
            return
        if not isinstance(node, Leaf):
            raise _Bad("decision tree is not total", path)
        if not node.chain:
            raise _Bad("empty chain", path)
        product: tuple = ()
        for w in node.chain:
            if w.alphabet != alphabet:
                raise _Bad("chain word over another alphabet", path)
            inv = tuple(-x for x in reversed(w.letters))
            if decided.get(w.letters) == "+" or decided.get(inv) == "-":
                product = product + w.letters
            else:
                raise _Bad(f"chain element {w} is not positive on this branch", path)
        start = Word.from_letters(alphabet, reduce_letters(product))
        proof = EqualityProof(start, Word.identity(alphabet), node.steps)
        try:
            replay(presentation, proof)
        except ProofError as exc:
            raise _Bad(f"leaf proof fails to replay: {exc}", path) from None
        count[0] += 1

    try:
        walk(cert.tree, {}, ())
    except _Bad as bad:
        return Reject(bad.reason, bad.path)
    return Accept(count[0])
