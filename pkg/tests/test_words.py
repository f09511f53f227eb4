import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics.free_groups import free_group

from branchorder.words import (
    AlphabetMismatch,
    Presentation,
    Word,
    concat,
    conjugate,
    cyclic_reduce_letters,
    free_reduce,
    invert,
    parse_word,
    reduce_letters,
    word_from_json,
)

NAMES = ("a", "b", "c")
F, a, b, c = free_group("a b c")
SYMS = (a, b, c)

syllables = st.lists(st.tuples(st.sampled_from(NAMES), st.integers(-3, 3)), max_size=12)


def sympy_word(pairs):
    w = F.identity
    for name, e in pairs:
        w = w * SYMS[NAMES.index(name)] ** e
    return w


def as_pairs(w: Word):
    return [(NAMES[g], e) for g, e in w.syllables]


@given(syllables)
def test_free_reduce_matches_sympy(pairs):
    w = free_reduce(pairs, NAMES)
    ref = sympy_word(pairs)
    assert [(str(s), e) for s, e in ref.array_form] == as_pairs(w)


@given(syllables)
def test_reduced_words_have_no_cancelling_neighbours(pairs):
    letters = free_reduce(pairs, NAMES).letters
    assert all(x != -y for x, y in zip(letters, letters[1:]))


@given(syllables, syllables, syllables)
def test_product_is_associative(p, q, r):
    u, v, w = (free_reduce(x, NAMES) for x in (p, q, r))
    assert (u * v) * w == u * (v * w)


@given(syllables)
def test_inverse_cancels(pairs):
    w = free_reduce(pairs, NAMES)
    assert (w * ~w).is_identity() and (~w * w).is_identity()
    assert invert(invert(w)) == w


@given(syllables, st.integers(-4, 4))
def test_power_matches_repeated_product(pairs, m):
    w = free_reduce(pairs, NAMES)
    expected = Word.identity(NAMES)
    for _ in range(abs(m)):
        expected = expected * (w if m > 0 else ~w)
    assert w ** m == expected


@given(syllables)
def test_text_and_json_round_trip(pairs):
    w = free_reduce(pairs, NAMES)
    assert parse_word(str(w), NAMES) == w
    assert word_from_json(w.to_json(), NAMES) == w


@given(syllables)
def test_cyclic_reduction_is_a_conjugate(pairs):
    w = free_reduce(pairs, NAMES)
    core = cyclic_reduce_letters(w.letters)
    if core:
        assert core[0] != -core[-1] or len(core) == 1
    cut = (len(w.letters) - len(core)) // 2
    c = Word.from_letters(NAMES, w.letters[:cut])
    assert c * Word.from_letters(NAMES, core) * ~c == w


def test_examples():
    assert str(free_reduce([("a", 1), ("a", -1)], NAMES)) == "1"
    assert free_reduce([("a", 2), ("a", -1), ("b", 1)], NAMES) == parse_word("a b", NAMES)
    assert str(parse_word("b^-1 a b a", NAMES)) == "b^-1 a b a"
    assert conjugate(parse_word("a", NAMES), parse_word("b", NAMES)) == parse_word("b^-1 a b", NAMES)
    assert reduce_letters((1, 2, -2, -1, 3)) == (3,)


def test_alphabet_mismatch_and_bad_names():
    u = parse_word("a", NAMES)
    v = parse_word("a", ("a", "z"))
    with pytest.raises(AlphabetMismatch):
        concat(u, v)
    with pytest.raises(ValueError):
        parse_word("q", NAMES)


def test_presentation_keeps_original_and_cyclic_forms():
    P = Presentation.build(["x", "y"], ["y x x y^-1", "x^3"])
    assert str(P.relators[0]) == "x^2"
    assert str(P.original_relators[0]) == "y x^2 y^-1"
    assert Presentation.from_json(P.to_json()) == P
