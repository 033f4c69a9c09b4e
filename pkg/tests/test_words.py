import random

import pytest
from hypothesis import given, strategies as st

from fgcert.words import (
    WordError,
    alphabet,
    commutator,
    parse_word,
    random_word,
)

XY = alphabet("x", "y")
XYZ = alphabet("x", "y", "z")


def words(alpha=XY, max_length=20):
    syllable = st.tuples(
        st.integers(0, alpha.rank - 1),
        st.integers(-3, 3).filter(lambda e: e != 0))
    return st.lists(syllable, max_size=max_length).map(
        lambda sylls: _product(alpha, sylls))


def _product(alpha, sylls):
    w = alpha.identity()
    for gen, exp in sylls:
        w = w * alpha.generator(gen, exp)
    return w


def test_parse_basics():
    w = parse_word("x^2 y^-1", XY)
    assert w.syllables == ((0, 2), (1, -1))
    assert str(w) == "x^2 y^-1"
    assert str(parse_word("1", XY)) == "1"
    assert parse_word("x * x^-1", XY).is_identity()


def test_parse_star_and_whitespace_separators():
    assert parse_word("x*y", XY) == parse_word("x y", XY)
    assert parse_word("x * y^2 * x", XY) == parse_word("x y^2 x", XY)


def test_parse_errors_report_position():
    with pytest.raises(WordError) as err:
        parse_word("x q", XY)
    assert "q" in str(err.value)
    with pytest.raises(WordError):
        parse_word("x^0", XY)
    with pytest.raises(WordError):
        parse_word("x^", XY)
    with pytest.raises(WordError):
        parse_word("", XY)


def test_reduction_merges_and_cancels():
    w = parse_word("x^2 x^-1 y y^-1 x", XY)
    assert str(w) == "x^2"
    assert parse_word("x y y^-1 x^-1", XY).is_identity()


@given(words())
def test_format_parse_roundtrip(w):
    assert parse_word(str(w), XY) == w


@given(words(), words())
def test_mul_inverse_cancel(a, b):
    assert (a * b) * b.inverse() == a
    assert a * a.inverse() == XY.identity()


@given(words(), words(), words())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(words(), st.integers(-5, 5))
def test_powers(w, n):
    direct = XY.identity()
    step = w if n >= 0 else w.inverse()
    for _ in range(abs(n)):
        direct = direct * step
    assert w ** n == direct


@given(words())
def test_length_counts_letters(w):
    assert w.length() == sum(abs(e) for _, e in w.syllables)
    assert len(w.letters()) == w.length()


def test_commutator_convention():
    # [a, b] = a b a^-1 b^-1, so [y, x] = y x y^-1 x^-1
    x, y = XY.generators()
    assert str(commutator(y, x)) == "y x y^-1 x^-1"


def test_conjugation_convention():
    # a.conjugated_by(t) = t^-1 a t
    x, y = XY.generators()
    assert x.conjugated_by(y) == y.inverse() * x * y


@given(words())
def test_exponent_sums_additive(w):
    x, y = XY.generators()
    sums = w.exponent_sums()
    assert (w * x).exponent_sums() == (sums[0] + 1, sums[1])
    assert (w * y.inverse()).exponent_sums() == (sums[0], sums[1] - 1)


def test_alphabet_mismatch_rejected():
    with pytest.raises(WordError):
        parse_word("x", XY) * parse_word("x", XYZ)


def test_random_words_are_reduced():
    rng = random.Random(7)
    for _ in range(300):
        w = random_word(rng, XYZ, 25)
        assert w.length() <= 25
        # no adjacent same-generator syllables, no zero exponents
        for i in range(len(w.syllables) - 1):
            assert w.syllables[i][0] != w.syllables[i + 1][0]
        assert all(e != 0 for _, e in w.syllables)
