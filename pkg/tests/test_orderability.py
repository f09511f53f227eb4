import json

import pytest

from branchorder import (
    Accept,
    FamilyParams,
    Inconclusive,
    NloCertificate,
    Presentation,
    Reject,
    SearchBudget,
    TrivialGroup,
    build_standard_presentation,
    build_universe,
    check_proof,
    nlo_search,
    verify_certificate,
)
from branchorder.certificate import Branch, Leaf
from branchorder.orderability import ball, cone_search, finite_group_shortcut
from branchorder.proofs import ProofStep

SMALL = SearchBudget(max_cosets=20_000)
CONTROLS = {
    "Z": (["a"], []),
    "Z2": (["a", "b"], ["a b a^-1 b^-1"]),
    "trefoil": (["x", "y"], ["x^2 y^-3"]),
}
FINITE = {
    "C2": (["a"], ["a^2"]),
    "C3": (["a"], ["a^3"]),
    "S3": (["x", "y"], ["x^2", "y^3", "x y x y"]),
}


def pres(spec):
    return Presentation.build(*spec)


@pytest.mark.parametrize("name", CONTROLS)
@pytest.mark.parametrize("radius", [1, 2])
def test_orderable_controls_are_never_certified(name, radius):
    res = nlo_search(pres(CONTROLS[name]), radius=radius, budget=SMALL)



@pytest.mark.parametrize("name", FINITE)
def test_torsion_shortcut_certifies_finite_groups(name):
    P = pres(FINITE[name])
    cert = nlo_search(P)
    assert isinstance(cert, NloCertificate) and cert.method == "torsion"
    assert verify_certificate(P, cert) == Accept(2)


@pytest.mark.parametrize("name,radius", [("C2", 1), ("C3", 2), ("C3", 3), ("S3", 1), ("S3", 2)])
def test_cone_search_certifies_finite_groups(name, radius):
    P = pres(FINITE[name])
    cert = nlo_search(P, radius=radius, use_shortcut=False)
    assert isinstance(cert, NloCertificate)
    assert verify_certificate(P, cert)


def test_monotone_in_radius():
    P = pres(FINITE["C3"])
    found = [isinstance(nlo_search(P, radius=r, use_shortcut=False), NloCertificate) for r in (1, 2, 3)]
    # once certified, a larger ball stays certified
    assert found == sorted(found)


def test_certificate_json_round_trip():
    P = pres(FINITE["S3"])
    cert = nlo_search(P, radius=2, use_shortcut=False)
    again = NloCertificate.from_json(json.loads(cert.dumps()))
    assert again == cert
    assert verify_certificate(P, again)


def test_verifier_rejects_wrong_group():
    cert = nlo_search(pres(FINITE["C2"]))
    assert isinstance(verify_certificate(pres(FINITE["C3"]), cert), Reject)
    assert isinstance(verify_certificate(pres(CONTROLS["Z"]), cert), Reject)


def test_verifier_rejects_a_deleted_branch():
    P = pres(FINITE["C3"])
    cert = nlo_search(P)
    data = cert.to_json()
    del data["tree"]["negative"]
    verdict = verify_certificate(P, NloCertificate.from_json(data))
    assert isinstance(verdict, Reject) and "not total" in verdict.reason


def test_verifier_rejects_tampering():
    P = pres(FINITE["C3"])
    cert = nlo_search(P)
    tree = cert.tree
    g = tree.element
    # chain element of the wrong sign
    bad = Branch(g, Leaf((~g,) * 3, tree.positive.steps), tree.negative)
    assert not verify_certificate(P, NloCertificate(cert.witness, bad, cert.generators))
    # proof with one step dropped
    short = Branch(g, Leaf(tree.positive.chain, tree.positive.steps[:-1]), tree.negative)
    assert not verify_certificate(P, NloCertificate(cert.witness, short, cert.generators))
    # a step pointing at a relator that does not exist
    wild = Branch(g, Leaf(tree.positive.chain, (ProofStep(0, 5),)), tree.negative)
    assert not verify_certificate(P, NloCertificate(cert.witness, wild, cert.generators))
    # branching on a non-witness
    h = g * g
    other = Branch(h, tree.positive, tree.negative)
    assert not verify_certificate(P, NloCertificate(cert.witness, other, cert.generators))
    # a leaf whose chain does not multiply to 1 with an empty proof
    empty = Branch(g, Leaf((g,), ()), tree.negative)
    assert not verify_certificate(P, NloCertificate(cert.witness, empty, cert.generators))


def test_universe_proofs_replay():
    P = pres(FINITE["S3"])
    uni = build_universe(P, 2)
    assert uni.representatives[0].is_identity() and uni.cls(uni.representatives[0]) == 0
    for u, v, proof in uni.equal_pairs:
        assert check_proof(P, proof)
    for members in uni.classes().values():
        for w in members[1:]:
            proof = uni.proof_between(w, members[0])
            assert proof.start == w and check_proof(P, proof)
    # a ball in a group of order 6 needs at most 6 classes
    assert len(uni.classes()) <= 6


def test_universe_extra_words():
    P = build_standard_presentation(FamilyParams((0, 0)))
    extra = P.word("b1^-1 a1 b1 a1")
    uni = build_universe(P, 1, extra_words=[extra])
    assert uni.cls(extra) is not None and uni.cls(~extra) is not None
    # b1^-1 a1 b1 a1 = a2 by the first relator
    assert uni.same_class(extra, P.word("a2"))


def test_ball_size():
    P = pres(CONTROLS["Z2"])
    assert len(ball(P, 2)) == 1 + 4 + 12


def test_trivial_and_finite_family_members():
    for k in [(-3,), (0,), (3,)]:
        assert isinstance(nlo_search(build_standard_presentation(FamilyParams(k))), TrivialGroup)
    P = build_standard_presentation(FamilyParams((0, 0)))
    cert = nlo_search(P)
    assert isinstance(cert, NloCertificate) and verify_certificate(P, cert)


def test_shortcut_not_applicable_on_infinite_group():
    res = finite_group_shortcut(pres(CONTROLS["Z"]), SMALL)
    assert not res and not res.trivial_group


def test_cone_search_node_limit():
    P = pres(CONTROLS["Z2"])
    res = cone_search(build_universe(P, 2), max_nodes=3)

