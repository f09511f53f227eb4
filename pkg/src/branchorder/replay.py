"""Concrete replay of the word identities used to rule out left orders on the family.

Catalog (indices mod n, all in the standard presentation):

I1     (a_{i+1} a_i^-1)^m b_i^-1  =  b_i^-1 a_i^m
I2     b_{i-1}^-1 a_i^m  =  b_i^-1 a_i^-1 b_i^-1 a_i^(m+k_i)  =  b_i^-1 a_{i+1}^-1 b_i^-1 a_i^(m+k_i+1)
I3     b_i^-1 a_i^k_i  =  a_i b_i b_{i-1}^-1  =  (b_i a_{i+1}) (b_{i-1} a_i)^-1
I4pos  (a_{i+1} a_i^-1)^m = a_{i+1}^m  prod_{j=m-1..0} a_{i+1}^-j a_i^-1 a_{i+1}^j      (m >= 0)
I4neg  (a_{i+1} a_i^-1)^m = a_{i+1}^m  prod_{j=-m..1}  a_{i+1}^j  a_i   a_{i+1}^-j     (m < 0)

I4pos/I4neg are free-group identities and must hold by free reduction alone.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .family import FamilyParams, build_standard_presentation
from .proofs import EqualityProof, check_proof, compose, lift, trivial_proof
from .rewriting import DEFAULT_BUDGET, SearchBudget, Unknown, prove_equal, prove_equal_by_core
from .words import Word, free_reduce


class IdentityId(str, Enum):
    I1 = "I1"
    I2 = "I2"
    I3 = "I3"
    I4pos = "I4pos"
    I4neg = "I4neg"


class IdentityError(AssertionError):
    """A free-group identity failed to reduce; indicates a bug, not a budget issue."""


@dataclass(frozen=True)
class IdentityInstance:
    identity_id: IdentityId
    params: FamilyParams
    i: int
    m: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "identity_id", IdentityId(self.identity_id))
        if not 1 <= self.i <= self.params.n:
            raise ValueError(f"i = {self.i} outside 1..{self.params.n}")
        needs_m = self.identity_id is not IdentityId.I3
        if needs_m and self.m is None:
            raise ValueError(f"{self.identity_id.value} needs an exponent m")
        if self.identity_id is IdentityId.I4pos and self.m < 0:
            raise ValueError("I4pos needs m >= 0")
        if self.identity_id is IdentityId.I4neg and self.m >= 0:
            raise ValueError("I4neg needs m < 0")


@dataclass(frozen=True)
class IdentityProof:
    instance: IdentityInstance
    forms: tuple[Word, ...]
    proofs: tuple[EqualityProof, ...]  # proofs[j]: forms[0] -> forms[j + 1]

    @property
    def steps(self) -> int:
        return sum(len(p) for p in self.proofs)


def identity_forms(inst: IdentityInstance) -> tuple[Word, ...]:
    n = inst.params.n
    names = build_standard_presentation(inst.params).alphabet
    i, m = inst.i, inst.m
    k = inst.params.k[i - 1]

    def a(j):
        return f"a{(j - 1) % n + 1}"

    def b(j):
        return f"b{(j - 1) % n + 1}"

    def w(*pairs):
        return free_reduce(pairs, names)

    ident = inst.identity_id
    if ident is IdentityId.I1:
        return (w((a(i + 1), 1), (a(i), -1)) ** m * w((b(i), -1)),
                w((b(i), -1), (a(i), m)))
    if ident is IdentityId.I2:
        return (w((b(i - 1), -1), (a(i), m)),
                w((b(i), -1), (a(i), -1), (b(i), -1), (a(i), m + k)),
                w((b(i), -1), (a(i + 1), -1), (b(i), -1), (a(i), m + k + 1)))
    if ident is IdentityId.I3:
        return (w((b(i), -1), (a(i), k)),
                w((a(i), 1), (b(i), 1), (b(i - 1), -1)),
                w((b(i), 1), (a(i + 1), 1)) * w((b(i - 1), 1), (a(i), 1)) ** -1)
    lhs = w((a(i + 1), 1), (a(i), -1)) ** m
    raw = [(a(i + 1), m)]
    if ident is IdentityId.I4pos:
        for j in range(m - 1, -1, -1):
            raw += [(a(i + 1), -j), (a(i), -1), (a(i + 1), j)]
    else:
        for j in range(-m, 0, -1):
            raw += [(a(i + 1), j), (a(i), 1), (a(i + 1), -j)]
    return lhs, free_reduce(raw, names)


def _prove(P, u: Word, v: Word, budget: SearchBudget) -> EqualityProof | Unknown:
    res = prove_equal_by_core(P, u, v, budget)
    if isinstance(res, Unknown):
        res = prove_equal(P, u, v, budget)
    return res


def _induct_i1(P, inst: IdentityInstance, budget: SearchBudget) -> EqualityProof | Unknown:
    """I1 by induction on |m|: peel one x = (a_{i+1} a_i^-1)^(+-1) at a time."""
    base = IdentityInstance(IdentityId.I1, inst.params, inst.i, 1 if inst.m > 0 else -1)
    bu, bv = identity_forms(base)
    step = _prove(P, bu, bv, budget)
    if isinstance(step, Unknown):
        return step
    names = P.alphabet
    x = Word.from_letters(names, bu.letters[:-1])  # bu = x b_i^-1
    tail = Word.from_letters(names, bv.letters[1:])  # a_i^(+-1)
    proof = trivial_proof(identity_forms(inst)[0])
    for j in range(abs(inst.m)):
        left = x ** (abs(inst.m) - j - 1)
        proof = compose(proof, lift(P, step, left=left, right=tail ** j))
    return proof


def replay_identity(inst: IdentityInstance, budget: SearchBudget = DEFAULT_BUDGET,
                    escalate: bool = True) -> IdentityProof | Unknown:
    """Proofs from the first form of ``inst`` to each later form, or :class:`Unknown`.

    I1 is built inductively from its |m| = 1 case; I2/I3 go through the cyclic
    core of ``u v^-1`` with a direct search as fallback.  ``escalate`` retries
    an Unknown once with four times the state budget.
    """
    forms = identity_forms(inst)
    if inst.identity_id in (IdentityId.I4pos, IdentityId.I4neg):
        if forms[0] != forms[1]:
            raise IdentityError(f"{inst}: sides differ after free reduction: {forms[0]} vs {forms[1]}")
        return IdentityProof(inst, forms, (EqualityProof(forms[0], forms[1], ()),))
    P = build_standard_presentation(inst.params)
    budgets = [budget, budget.scaled(4)] if escalate else [budget]
    proofs = []
    for target in forms[1:]:
        for b in budgets:
            if inst.identity_id is IdentityId.I1 and inst.m != 0:
                res = _induct_i1(P, inst, b)
            else:
                res = _prove(P, forms[0], target, b)
            if not isinstance(res, Unknown):
                break
        if isinstance(res, Unknown):
            return res
        proofs.append(res)
    return IdentityProof(inst, forms, tuple(proofs))


def suite_instances(params: FamilyParams, m_values) -> list[IdentityInstance]:
    m_values = list(m_values)
    if not m_values:
        return []
    out = []
    for i in range(1, params.n + 1):
        for m in m_values:
            out.append(IdentityInstance(IdentityId.I1, params, i, m))
            out.append(IdentityInstance(IdentityId.I2, params, i, m))
            out.append(IdentityInstance(IdentityId.I4pos if m >= 0 else IdentityId.I4neg, params, i, m))
        out.append(IdentityInstance(IdentityId.I3, params, i))
    return out


def _run_one(args) -> dict:
    inst, budget = args
    t0 = time.perf_counter()
    entry = {"identity": inst.identity_id.value, "i": inst.i, "m": inst.m}
    try:
        res = replay_identity(inst, budget)
    except IdentityError as exc:
        entry.update(status="error", proof_steps=0, detail=str(exc))
    else:
        if isinstance(res, Unknown):
            entry.update(status="unknown", proof_steps=0, detail=res.reason)
        else:
            P = build_standard_presentation(inst.params)
            ok = all(check_proof(P, p) for p in res.proofs)
            entry.update(status="proved" if ok else "error", proof_steps=res.steps,
                         forms_proved=len(res.proofs))
    entry["millis"] = round((time.perf_counter() - t0) * 1000, 3)
    return entry


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("BRANCHORDER_THREADS", "1")))
    except ValueError:
        return 1


def replay_suite(params: FamilyParams, m_range, budget: SearchBudget = DEFAULT_BUDGET) -> list[dict]:
    """Run every identity for every ``i`` and every ``m`` in ``m_range`` (I3 once per ``i``).

    ``m_range`` is any iterable of ints, or an inclusive ``(lo, hi)`` pair.
    Report order is fixed by the instance order regardless of parallelism.
    """
    if isinstance(m_range, tuple) and len(m_range) == 2:
        m_range = range(m_range[0], m_range[1] + 1)
    jobs = [(inst, budget) for inst in suite_instances(params, m_range)]
    workers = worker_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(j) for j in jobs]


def summarize(report: list[dict]) -> dict:
    out: dict = {}
    for e in report:
        s = out.setdefault(e["identity"], {"proved": 0, "unknown": 0, "error": 0})
        s[e["status"]] += 1
    return out
