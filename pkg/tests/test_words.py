import pytest
from hypothesis import given, strategies as st

from crossmod.words import (
    Alphabet,
    AlphabetMismatch,
    Word,
    conjugate,
    format_word,
    inverse,
    multiply,
    parse_word,
    product,
    reduce_letters,
    words_up_to,
)

A = Alphabet(("x", "y"))
letters = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=12)
words = letters.map(lambda ls: Word(A, tuple(ls)))


def test_multiply_examples():
    assert multiply(parse_word(A, "x*y"), parse_word(A, "y^-1*x")) == parse_word(A, "x^2")
    assert multiply(parse_word(A, "x"), parse_word(A, "x^-1")).is_identity()
    w = parse_word(A, "x*y^-1")
    assert multiply(A.identity(), w) == w == multiply(w, A.identity())


def test_conjugate_reduces():
    r = parse_word(A, "x^3")
    assert conjugate(parse_word(A, "x^-1*y"), r) == parse_word(A, "x^-1*y*x^3*y^-1*x")
    assert conjugate(A.identity(), r) == r
    y2 = parse_word(A, "y^2")
    assert conjugate(parse_word(A, "y"), y2) == y2


def test_parse_and_format_round_trip():
    for text in ["1", "x", "x^-2", "x*y^3*x^-1", "y^-1*x^2*y"]:
        assert format_word(parse_word(A, text)) == text


def test_parse_errors():
    with pytest.raises(KeyError):
        parse_word(A, "z")
    with pytest.raises(SyntaxError):
        parse_word(A, "x^^2")


def test_alphabet_mismatch():
    B = Alphabet(("x", "y", "z"))
    with pytest.raises(AlphabetMismatch):
        multiply(A.generator(0), B.generator(0))


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(("x", "x"))
    with pytest.raises(ValueError):
        Alphabet(())


def test_reduction_exhaustive_short_words():
    for w in words_up_to(A, 8):
        assert (w * ~w).is_identity()
        assert (~w * w).is_identity()
        assert reduce_letters(w.letters) == w.letters


def test_words_up_to_counts():
    # reduced words of length k over a rank-2 free group: 4 * 3^(k-1)
    ws = words_up_to(A, 4)
    assert len(ws) == 1 + 4 + 12 + 36 + 108


def test_product():
    assert product([A.generator(0)] * 3) == parse_word(A, "x^3")
    assert product([], A).is_identity()


@given(words, words, words)
def test_multiply_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(words)
def test_inverse_is_involution(w):
    assert inverse(inverse(w)) == w
    assert (w * inverse(w)).is_identity()


@given(letters)
def test_reduction_idempotent(ls):
    once = reduce_letters(ls)
    assert reduce_letters(once) == once
    assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(once, once[1:]))


@given(words)
def test_format_parse_round_trip(w):
    assert parse_word(A, format_word(w)) == w
