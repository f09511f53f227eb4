"""Acceptance criteria.  Each test prints one PASS/FAIL line.

Run alone with ``python3 tests/test_acceptance.py`` or as part of pytest (the
lines are repeated in the terminal summary).
"""
import itertools
import json
import pathlib
import sys
import time

import pytest

from branchorder import (
    Exceeded,
    FamilyParams,
    FiniteOrder,
    IdentityId,
    IdentityInstance,
    Inconclusive,
    NloCertificate,
    Presentation,
    TrivialGroup,
    Verified,
    abelianize,
    build_raw_presentation,
    build_standard_presentation,
    check_proof,
    check_tietze_equivalence,
    elimination_substitution,
    h1_order,
    nlo_search,
    replay_identity,
    todd_coxeter,
    verify_certificate,
)
from branchorder.replay import IdentityProof, suite_instances
from branchorder.rewriting import SearchBudget, Unknown

GOLDEN = pathlib.Path(__file__).parent / "golden"
K_VALUES = range(-2, 3)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def report(number: int, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def sweep(max_n: int):
    for n in range(1, max_n + 1):
        for k in itertools.product(K_VALUES, repeat=n):
            yield FamilyParams(k)


def golden(name: str, compute):
    """Load a golden file, recording it from ``compute()`` on the first verified run."""
    path = GOLDEN / name
    if path.exists():
        return json.loads(path.read_text())
    data = compute()
    path.parent.mkdir(exist_ok=True)
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    return data


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def test_criterion_1_raw_and_standard_homology_agree():
    t0 = time.perf_counter()
    count, mismatches = 0, []
    for p in sweep(4):
        count += 1
        raw, std = h1_order(build_raw_presentation(p)), h1_order(build_standard_presentation(p))
        if raw != std:
            mismatches.append((p.k, raw, std))
    elapsed = time.perf_counter() - t0
    passed = count == 780 and not mismatches and elapsed < 120
    report(1, passed, f"{count} instances, {len(mismatches)} H1 mismatches, {elapsed:.1f}s (target < 120s)")
    assert passed, mismatches[:5]


def test_criterion_2_tietze_equivalence():
    t0 = time.perf_counter()
    failures = []
    count = 0
    for p in sweep(3):
        count += 1
        raw, std = build_raw_presentation(p), build_standard_presentation(p)
        res = check_tietze_equivalence(raw, std, elimination_substitution(p))
        if not isinstance(res, Verified):
            failures.append((p.k, res))
            continue
        ok = all(check_proof(std, q) for q in res.forward) and \
            all(check_proof(res.image, q) for q in res.backward)
        if not ok:
            failures.append((p.k, "proof failed replay"))
    elapsed = time.perf_counter() - t0
    passed = count == 155 and not failures and elapsed < 600
    report(2, passed, f"{count - len(failures)}/{count} verified both ways, {elapsed:.1f}s (target < 600s)")
    assert passed, failures[:5]


def test_criterion_3_homology_baseline():
    orders: dict[int, set] = {}
    for p in sweep(4):
        orders.setdefault(p.n, set()).add(h1_order(build_standard_presentation(p)))
    constant = all(len(v) == 1 for v in orders.values())
    observed = {str(n): next(iter(v)) for n, v in orders.items()}

    def oracle():
        # permutation-expansion determinant of the relation matrix, k = 0 and k = 2
        out = {}
        for n in range(1, 5):
            dets = {abs(leibniz_det(abelianize(build_standard_presentation(FamilyParams((k,) * n))).to_rows()))
                    for k in (0, 2)}
            assert len(dets) == 1
            out[str(n)] = dets.pop()
        return out

    expected = golden("h1_orders.json", oracle)
    passed = constant and observed == expected and \
        [expected[str(n)] for n in (2, 3, 4)] == [9, 49, 225]
    report(3, passed, f"|H1| by n = {observed}, constant in k: {constant}, golden {expected}")
    assert passed


def test_criterion_4_identity_replay():
    t0 = time.perf_counter()
    free_total = free_ok = 0
    for p in sweep(3):
        for i in range(1, p.n + 1):
            for m in range(-12, 13):
                ident = IdentityId.I4pos if m >= 0 else IdentityId.I4neg
                free_total += 1
                res = replay_identity(IdentityInstance(ident, p, i, m))
                free_ok += isinstance(res, IdentityProof) and res.steps == 0
    group_total = proved = unknown = wrong = 0
    for p in sweep(3):
        P = build_standard_presentation(p)
        for inst in suite_instances(p, range(-4, 5)):
            if inst.identity_id not in (IdentityId.I1, IdentityId.I2, IdentityId.I3):
                continue
            group_total += 1
            res = replay_identity(inst)
            if isinstance(res, Unknown):
                unknown += 1
                continue
            good = all(q.start == res.forms[0] and q.end == f and check_proof(P, q)
                       for q, f in zip(res.proofs, res.forms[1:]))
            proved += good
            wrong += not good
    elapsed = time.perf_counter() - t0
    rate = proved / group_total
    passed = free_ok == free_total and rate >= 0.95 and wrong == 0
    report(4, passed, f"free identities {free_ok}/{free_total}; group identities {proved}/{group_total} "
                      f"({rate:.1%}), {unknown} unknown, {wrong} failed replay; {elapsed:.1f}s")
    assert passed


CONTROLS = {
    "<a|>": (["a"], []),
    "<a,b|[a,b]>": (["a", "b"], ["a b a^-1 b^-1"]),
    "<x,y|x^2y^-3>": (["x", "y"], ["x^2 y^-3"]),
}
FINITE_CONTROLS = {
    "<a|a^2>": (["a"], ["a^2"]),
    "<x,y|x^2,y^3,(xy)^2>": (["x", "y"], ["x^2", "y^3", "x y x y"]),
}


def test_criterion_5_orderability_soundness():
    bad = []
    for name, spec in CONTROLS.items():
        for radius in (1, 2, 3):
            res = nlo_search(Presentation.build(*spec), radius=radius)
            if not isinstance(res, Inconclusive):
                bad.append((name, radius, type(res).__name__))
    timings = {}
    for name, spec in FINITE_CONTROLS.items():
        P = Presentation.build(*spec)
        t0 = time.perf_counter()
        cert = nlo_search(P)
        timings[name] = time.perf_counter() - t0
        if not (isinstance(cert, NloCertificate) and verify_certificate(P, cert)):
            bad.append((name, "no verified certificate"))
    slow = [n for n, t in timings.items() if t >= 1.0]
    passed = not bad and not slow
    shown = ", ".join(f"{n} {t * 1000:.0f}ms" for n, t in timings.items())
    report(5, passed, f"controls inconclusive at radius 1-3: {not bad}; certified: {shown}")
    assert passed, bad


COVERAGE = [(0, 0), (-1, -1), (-1, 0), (1, 0), (1, 1), (2, 0), (0, 0, 0)]


def _outcome(P):
    res = nlo_search(P)
    if isinstance(res, TrivialGroup):
        return {"outcome": "trivial-group"}, None
    if isinstance(res, Inconclusive):
        return {"outcome": "inconclusive"}, None
    return {"outcome": "certified", "method": res.method, "leaves": len(res.leaves())}, res


def test_criterion_6_family_certification():
    trivial = []
    for k in range(-3, 4):
        res = nlo_search(build_standard_presentation(FamilyParams((k,))))
        trivial.append(isinstance(res, TrivialGroup))
    coverage, verified = {}, True
    for k in COVERAGE:
        P = build_standard_presentation(FamilyParams(k))
        entry, cert = _outcome(P)
        if cert is not None:
            verified &= bool(verify_certificate(P, cert))
        coverage[",".join(map(str, k))] = entry
    baseline = golden("family_baseline.json", lambda: coverage)
    definite = coverage["0,0"]["outcome"] in ("certified", "inconclusive")
    passed = all(trivial) and definite and verified and coverage == baseline
    counts = {o: sum(e["outcome"] == o for e in coverage.values()) for o in ("certified", "inconclusive")}
    report(6, passed, f"n=1 trivial for |k|<=3: {sum(trivial)}/7; (0,0): {coverage['0,0']['outcome']}; "
                      f"coverage {counts} over {len(coverage)} instances, matches baseline: {coverage == baseline}")
    assert passed


def test_criterion_7_coset_enumeration():
    exact = {f"C{m}": (["a"], [f"a^{m}"], m) for m in range(1, 9)}
    exact["S3"] = (["x", "y"], ["x^2", "y^3", "x y x y"], 6)
    wrong_order = [name for name, (g, r, order) in exact.items()
                   if not (isinstance(res := todd_coxeter(Presentation.build(g, r)), FiniteOrder)
                           and res.order == order)]
    finite = []
    budget = SearchBudget(max_cosets=100_000)
    candidates = [build_standard_presentation(FamilyParams((k,))) for k in range(-3, 4)]
    candidates += [build_standard_presentation(FamilyParams(k)) for k in [(0, 0), (-1, -1), (1, 1), (0, 1)]]
    candidates += [Presentation.build(g, r) for g, r, _ in exact.values()]
    divides = True
    for P in candidates:
        res = todd_coxeter(P, budget)
        if isinstance(res, FiniteOrder):
            finite.append(res.order)
            h = h1_order(P)
            divides &= isinstance(h, int) and res.order % h == 0
        else:
            assert isinstance(res, Exceeded)
    passed = not wrong_order and divides and len(finite) > 0
    report(7, passed, f"exact control orders: {not wrong_order}; {len(finite)} finite results, "
                      f"h1 divides order in all: {divides}")
    assert passed, wrong_order


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
