import itertools

import pytest

from branchorder import FamilyParams, IdentityId, IdentityInstance, build_standard_presentation
from branchorder.proofs import check_proof
from branchorder.replay import (
    IdentityProof,
    identity_forms,
    replay_identity,
    replay_suite,
    suite_instances,
    summarize,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("m", range(-12, 13))
def test_free_identities_reduce(n, m):
    ident = IdentityId.I4pos if m >= 0 else IdentityId.I4neg
    params = FamilyParams((1,) * n)
    for i in range(1, n + 1):
        res = replay_identity(IdentityInstance(ident, params, i, m))
        assert isinstance(res, IdentityProof) and res.steps == 0


def test_instance_validation():
    p = FamilyParams((0, 0))
    with pytest.raises(ValueError):
        IdentityInstance(IdentityId.I1, p, 3, 1)
    with pytest.raises(ValueError):
        IdentityInstance(IdentityId.I2, p, 1)
    with pytest.raises(ValueError):
        IdentityInstance(IdentityId.I4pos, p, 1, -1)
    with pytest.raises(ValueError):
        IdentityInstance(IdentityId.I4neg, p, 1, 0)


def test_forms_shape():
    p = FamilyParams((-1, 2))
    u, v = identity_forms(IdentityInstance(IdentityId.I1, p, 1, 2))
    assert str(u) == "a2 a1^-1 a2 a1^-1 b1^-1" and str(v) == "b1^-1 a1^2"
    forms = identity_forms(IdentityInstance(IdentityId.I3, p, 2))
    assert [str(f) for f in forms] == ["b2^-1 a2^2", "a2 b2 b1^-1", "b2 a1 a2^-1 b1^-1"]


@pytest.mark.parametrize("k", [(0,), (2,), (-2, 1), (1, -1, 2), (-2, -2, -2), (0, 1, -1, 2)])
@pytest.mark.parametrize("ident", [IdentityId.I1, IdentityId.I2])
@pytest.mark.parametrize("m", [-4, -1, 0, 3, 4])
def test_group_identities_are_proved(k, ident, m):
    params = FamilyParams(k)
    P = build_standard_presentation(params)
    for i in range(1, params.n + 1):
        res = replay_identity(IdentityInstance(ident, params, i, m))
        assert isinstance(res, IdentityProof)
        forms = res.forms
        for target, proof in zip(forms[1:], res.proofs):
            assert proof.start == forms[0] and proof.end == target
            assert check_proof(P, proof)


@pytest.mark.parametrize("k", list(itertools.product((-2, 0, 2), repeat=2)) + [(1, 2, -1)])
def test_third_identity(k):
    params = FamilyParams(k)
    P = build_standard_presentation(params)
    for i in range(1, params.n + 1):
        res = replay_identity(IdentityInstance(IdentityId.I3, params, i))
        assert isinstance(res, IdentityProof) and len(res.proofs) == 2
        assert all(check_proof(P, p) for p in res.proofs)


def test_suite_layout_and_report():
    params = FamilyParams((1, -1))
    insts = suite_instances(params, range(-1, 2))
    assert len(insts) == 2 * (3 * 3 + 1)
    assert suite_instances(params, []) == []
    report = replay_suite(params, (-1, 1))
    assert [(e["identity"], e["i"], e["m"]) for e in report] == \
        [(x.identity_id.value, x.i, x.m) for x in insts]
    totals = summarize(report)
    assert sum(t["proved"] for t in totals.values()) == len(report)


def test_trivial_group_identities():
    report = replay_suite(FamilyParams((2,)), (-2, 2))
    assert all(e["status"] == "proved" for e in report)


def test_parallel_matches_serial(monkeypatch):
    params = FamilyParams((0, 1))
    serial = replay_suite(params, (-1, 1))
    monkeypatch.setenv("BRANCHORDER_THREADS", "2")
    parallel = replay_suite(params, (-1, 1))
    strip = [{k: v for k, v in e.items() if k != "millis"} for e in serial]
    assert strip == [{k: v for k, v in e.items() if k != "millis"} for e in parallel]
