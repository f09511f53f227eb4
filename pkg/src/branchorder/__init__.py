"""Word problems, homology, coset enumeration and non-left-orderability
certificates for a family of branched-cover groups."""
from .certificate import Accept, Branch, Leaf, NloCertificate, Reject, verify_certificate
from .cosets import CosetTable, Exceeded, FiniteOrder, order_of_element, relators_close, todd_coxeter
from .family import (
    FamilyParams,
    build_graph_spec,
    build_raw_presentation,
    build_standard_presentation,
    elimination_substitution,
    pretzel_tag,
)
from .homology import INFINITE, IntMatrix, SnfResult, abelianize, h1, h1_order, smith_normal_form
from .orderability import Inconclusive, NotApplicable, TrivialGroup, build_universe, nlo_search
from .proofs import EqualityProof, ProofError, ProofStep, check_proof, compose, lift, replay, reverse
from .replay import IdentityId, IdentityInstance, replay_identity, replay_suite
from .rewriting import (
    DEFAULT_BUDGET,
    SearchBudget,
    Unknown,
    Verified,
    check_tietze_equivalence,
    prove_equal,
    prove_equal_by_core,
)
from .words import AlphabetMismatch, Presentation, Word, free_reduce, parse_word

__all__ = [name for name in dir() if not name.startswith("_")]
