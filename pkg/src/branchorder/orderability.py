"""Search for non-left-orderability certificates.

Two routes:

* torsion: if coset enumeration shows the group is finite and nontrivial, any
  element ``g`` of order ``m > 1`` gives a one-witness certificate (``g`` and
  ``g^-1`` both have ``m``-th power equal to 1);
* positive-cone search: sign every element class of a finite ball of words,
  close the positive set under products that land back in the ball, and
  backtrack; every branch must end in a proven contradiction.

Equalities between words are only ever used when backed by a replayable proof.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from .certificate import Branch, Leaf, NloCertificate, verify_certificate
from .cosets import FiniteOrder, order_of_element, todd_coxeter
from .proofs import EqualityProof, compose, lift, reverse, trivial_proof
from .rewriting import DEFAULT_BUDGET, SearchBudget, Unknown, explore, path_steps, prove_equal
from .words import Presentation, Word, invert, letter_key, reduce_letters

log = logging.getLogger(__name__)

DEFAULT_MAX_CHAIN = 8
DEFAULT_MAX_NODES = 20_000


@dataclass(frozen=True)
class Inconclusive:
    """No certificate found.  Says nothing about orderability."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class NotApplicable:
    reason: str
    trivial_group: bool = False

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class TrivialGroup:
    """The group has one element; left-orderability is defined for nontrivial groups only."""

    explanation: str = ("coset enumeration shows the group is trivial; left orders are only "
                        "defined for nontrivial groups, so it is non-left-orderable by convention")

    def __bool__(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# torsion route


def _candidate_words(presentation: Presentation, max_len: int = 2):
    alphabet = presentation.alphabet
    letters = [x for g in range(len(alphabet)) for x in (g + 1, -(g + 1))]
    seen = set()
    for length in range(1, max_len + 1):
        batch = []
        for combo in itertools.product(letters, repeat=length):
            w = reduce_letters(combo)
            if len(w) == length and w not in seen:
                seen.add(w)
                batch.append(w)
        batch.sort(key=letter_key)
        for w in batch:
            yield Word.from_letters(alphabet, w)


def torsion_certificate(presentation: Presentation, g: Word, proof: EqualityProof,
                        order: int) -> NloCertificate:
    """Certificate with witness ``{g}`` from a proof of ``g^order = 1``."""
    alphabet = presentation.alphabet
    g_inv = invert(g)
    neg_start = g_inv ** order
    # 1 = g^-m g^m  ->  g^-m, then read backwards
    back = lift(presentation, proof, left=neg_start)
    neg_proof = reverse(presentation, back)
    assert neg_proof.start == neg_start and neg_proof.end.is_identity()
    tree = Branch(g, Leaf((g,) * order, proof.steps), Leaf((g_inv,) * order, neg_proof.steps))
    return NloCertificate((g,), tree, alphabet, presentation.label, method="torsion")


def finite_group_shortcut(presentation: Presentation, budget: SearchBudget = DEFAULT_BUDGET,
                          max_candidates: int = 12) -> NloCertificate | NotApplicable:
    """Finite nontrivial group => certificate from a torsion element.

    Candidates are short words ordered by (order x length, word); each is tried
    with an escalating rewriting budget until one power proof is found.
    """
    result = todd_coxeter(presentation, budget)
    if not isinstance(result, FiniteOrder):
        return NotApplicable(f"coset enumeration exceeded {budget.max_cosets} cosets")
    if result.order == 1:
        return NotApplicable("group is trivial", trivial_group=True)
    table = result.table
    candidates = []
    for w in _candidate_words(presentation):
        m = order_of_element(table, w)
        if m > 1:
            candidates.append((m * len(w), w.sort_key(), w, m))
    candidates.sort(key=lambda c: c[:2])
    candidates = candidates[:max_candidates]
    identity = presentation.identity()
    for scale in (64, 8, 1):
        states = max(budget.max_states // scale, 1000)
        for _, _, g, m in candidates:
            power = g ** m
            proof = prove_equal(presentation, power, identity,
                                SearchBudget(states, budget.max_word_length, budget.max_cosets))
            if isinstance(proof, EqualityProof):
                log.info("torsion witness %s of order %d (%d steps)", g, m, len(proof))
                return torsion_certificate(presentation, g, proof, m)
    return NotApplicable(f"group has order {result.order} but no power proof was found")


# ---------------------------------------------------------------------------
# universe


@dataclass
class ElementUniverse:
    presentation: Presentation
    radius: int
    representatives: list[Word]
    index: dict
    class_of: list[int]
    equal_pairs: list[tuple[Word, Word, EqualityProof]]
    to_rep: list[EqualityProof] = field(repr=False)

    @property
    def trivial_set(self) -> list[Word]:
        return [w for i, w in enumerate(self.representatives) if self.class_of[i] == 0]

    def cls(self, word: Word | tuple) -> int | None:
        letters = word.letters if isinstance(word, Word) else word
        i = self.index.get(letters)
        return None if i is None else self.class_of[i]

    def same_class(self, u: Word, v: Word) -> bool:
        a, b = self.cls(u), self.cls(v)
        return a is not None and a == b

    def proof_between(self, u: Word, v: Word) -> EqualityProof:
        """Proof ``u -> v`` for two words known to be in one class."""
        i, j = self.index[u.letters], self.index[v.letters]
        if self.class_of[i] != self.class_of[j]:
            raise ValueError(f"{u} and {v} are not proven equal")
        if i == j:
            return trivial_proof(u)
        return compose(self.to_rep[i], reverse(self.presentation, self.to_rep[j]))

    def classes(self) -> dict[int, list[Word]]:
        out: dict[int, list[Word]] = {}
        for i, c in enumerate(self.class_of):
            out.setdefault(c, []).append(self.representatives[i])
        return out


def ball(presentation: Presentation, radius: int) -> list[Word]:
    """Freely reduced words of letter length 0..radius, in canonical order."""
    alphabet = presentation.alphabet
    gens = [x for g in range(len(alphabet)) for x in (g + 1, -(g + 1))]
    layer = [()]
    out = [()]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for x in gens:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        layer = nxt
    out.sort(key=letter_key)
    return [Word.from_letters(alphabet, w) for w in out]


def build_universe(presentation: Presentation, radius: int, budget: SearchBudget = DEFAULT_BUDGET,
                   extra_words=(), per_word_states: int = 400) -> ElementUniverse:
    """Ball of words plus proof-backed equality classes.

    Every word is explored by bounded rewriting; each time the exploration
    meets another universe word the two are merged, keeping the path as proof.
    Class 0 is the class of the identity.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    words = ball(presentation, radius)
    known = {w.letters for w in words}
    for w in extra_words:
        for v in (w, invert(w)):
            if v.letters not in known:
                known.add(v.letters)
                words.append(v)
    index = {w.letters: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    rel_len = max((len(r) for r in presentation.relators), default=0)
    max_letters = max(len(w) for w in words) + rel_len
    states = min(per_word_states, budget.max_states)
    edges: dict[int, list[tuple[int, EqualityProof]]] = {}
    equal_pairs = []
    for i, w in enumerate(words):
        parents = explore(presentation, w.letters, states, max_letters, budget.max_word_length)
        hits = sorted((index[y] for y in parents if y in index and y != w.letters))
        for j in hits:
            if find(i) == find(j):
                continue
            ri, rj = find(i), find(j)
            parent[max(ri, rj)] = min(ri, rj)
            proof = EqualityProof(w, words[j], tuple(path_steps(parents, words[j].letters)))
            equal_pairs.append((w, words[j], proof))
            edges.setdefault(i, []).append((j, proof))
            edges.setdefault(j, []).append((i, None))

    # identity is word 0, so every root is the smallest member of its class
    class_of = [find(i) for i in range(len(words))]
    to_rep: list[EqualityProof | None] = [None] * len(words)
    for root in set(class_of):
        to_rep[root] = trivial_proof(words[root])
        stack = [root]
        while stack:
            a = stack.pop()
            for b, proof in edges.get(a, ()):
                if to_rep[b] is not None:
                    continue
                # want b -> root; have a -> root
                if proof is not None:
                    step = reverse(presentation, proof)          # b -> a
                else:
                    step = _edge_proof(edges, b, a)             # b -> a, stored forward
                to_rep[b] = compose(step, to_rep[a])
                stack.append(b)
    return ElementUniverse(presentation, radius, words, index, class_of, equal_pairs, to_rep)


def _edge_proof(edges, src: int, dst: int) -> EqualityProof:
    for j, proof in edges[src]:
        if j == dst and proof is not None:
            return proof
    raise KeyError((src, dst))


# ---------------------------------------------------------------------------
# positive-cone search


class _Budget(Exception):
    pass


class _ConeSearch:
    def __init__(self, universe: ElementUniverse, max_chain: int, max_nodes: int):
        self.u = universe
        self.P = universe.presentation
        self.max_chain = max_chain
        self.max_nodes = max_nodes
        self.nodes = 0
        classes = universe.classes()
        self.rep = {c: min(ws, key=lambda w: w.sort_key()) for c, ws in classes.items()}
        self.inverse_class = {c: universe.cls(invert(self.rep[c])) for c in classes}
        self.order = sorted((c for c in classes if c != 0), key=lambda c: self.rep[c].sort_key())

    # derivations: ("dec", word) or ("mul", a, b)
    def chain(self, pos, c) -> tuple[Word, ...]:
        d = pos[c]
        if d[0] == "dec":
            return (d[1],)
        return self.chain(pos, d[1]) + self.chain(pos, d[2])

    def proof(self, pos, c) -> EqualityProof:
        """Proof ``product(chain(c)) -> rep(c)``."""
        P, rep = self.P, self.rep
        d = pos[c]
        if d[0] == "dec":
            return self.u.proof_between(d[1], rep[c])
        a, b = d[1], d[2]
        pa, pb = self.proof(pos, a), self.proof(pos, b)
        first = lift(P, pa, right=pb.start)
        second = lift(P, pb, left=rep[a])
        product = rep[a] * rep[b]
        third = self.u.proof_between(product, rep[c])
        return compose(compose(first, second), third)

    def contradiction(self, pos, c, inv) -> Leaf:
        """``c`` and its inverse class ``inv`` are both positive (or ``c`` is trivial)."""
        P, rep = self.P, self.rep
        if c == 0:
            return Leaf(self.chain(pos, c), self.proof(pos, c).steps)
        pc, pi = self.proof(pos, c), self.proof(pos, inv)
        first = lift(P, pc, right=pi.start)
        second = lift(P, pi, left=rep[c])
        third = lift(P, self.u.proof_between(rep[inv], invert(rep[c])), left=rep[c])
        proof = compose(compose(first, second), third)
        assert proof.end.is_identity()
        return Leaf(self.chain(pos, c) + self.chain(pos, inv), proof.steps)

    def close(self, decisions: list[Word]) -> Leaf | dict:
        pos: dict = {}
        size: dict = {}
        queue: list[int] = []

        def add(c, deriv, n):
            pos[c] = deriv
            size[c] = n
            if c == 0:
                return self.contradiction(pos, 0, None)
            inv = self.inverse_class[c]
            if inv is not None and inv in pos:
                return self.contradiction(pos, c, inv)
            queue.append(c)
            return None

        for w in decisions:
            c = self.u.cls(w)
            if c in pos:
                continue
            leaf = add(c, ("dec", w), 1)
            if leaf:
                return leaf
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for y in list(queue[:i]):
                for a, b in ((x, y), (y, x)):
                    if size[a] + size[b] > self.max_chain:
                        continue
                    c = self.u.cls(reduce_letters(self.rep[a].letters + self.rep[b].letters))
                    if c is None or c in pos:
                        continue
                    leaf = add(c, ("mul", a, b), size[a] + size[b])
                    if leaf:
                        return leaf
        return pos

    def dfs(self, decisions: list[Word], decided: set):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _Budget
        state = self.close(decisions)
        if isinstance(state, Leaf):
            return state, set()
        nxt = None
        for c in self.order:
            if c in state or self.inverse_class[c] in state or c in decided:
                continue
            nxt = c
            break
        if nxt is None:
            return None, set()
        w = self.rep[nxt]
        pos_tree, pos_w = self.dfs(decisions + [w], decided | {nxt})
        if pos_tree is None:
            return None, set()
        neg_tree, neg_w = self.dfs(decisions + [invert(w)], decided | {nxt})
        if neg_tree is None:
            return None, set()
        return Branch(w, pos_tree, neg_tree), {w.letters} | pos_w | neg_w


def cone_search(universe: ElementUniverse, max_chain: int = DEFAULT_MAX_CHAIN,
                max_nodes: int = DEFAULT_MAX_NODES) -> NloCertificate | Inconclusive:
    search = _ConeSearch(universe, max_chain, max_nodes)
    try:
        tree, witness = search.dfs([], set())
    except _Budget:
        return Inconclusive(f"decision tree exceeded {max_nodes} nodes")
    if tree is None or isinstance(tree, Leaf):
        # a bare leaf would need no decisions; impossible for a consistent ball
        return Inconclusive(f"a consistent sign assignment exists on the radius-{universe.radius} ball")
    P = universe.presentation
    alphabet = P.alphabet
    ordered = sorted((Word.from_letters(alphabet, w) for w in witness), key=lambda w: w.sort_key())
    return NloCertificate(tuple(ordered), tree, alphabet, P.label, method="cone-search")


def nlo_search(presentation: Presentation, radius: int = 2, budget: SearchBudget = DEFAULT_BUDGET,
               max_chain: int = DEFAULT_MAX_CHAIN, use_shortcut: bool = True,
               max_nodes: int = DEFAULT_MAX_NODES,
               per_word_states: int = 400) -> NloCertificate | Inconclusive | TrivialGroup:
    """Torsion shortcut first, then the positive-cone search on the radius ball.

    Every certificate returned has passed :func:`verify_certificate`.
    """
    cert = None
    if use_shortcut:
        short = finite_group_shortcut(presentation, budget)
        if isinstance(short, NloCertificate):
            cert = short
        elif short.trivial_group:
            return TrivialGroup()
    if cert is None:
        universe = build_universe(presentation, radius, budget, per_word_states=per_word_states)
        cert = cone_search(universe, max_chain, max_nodes)
        if isinstance(cert, Inconclusive):
            return cert
    verdict = verify_certificate(presentation, cert)
    if not verdict:
        raise RuntimeError(f"internal error: emitted certificate rejected: {verdict}")
    return cert


__all__ = [
    "ElementUniverse", "Inconclusive", "NotApplicable", "TrivialGroup", "ball", "build_universe",
    "cone_search", "finite_group_shortcut", "nlo_search", "torsion_certificate", "Unknown",
]
