from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hopfzeta.series import NCSeries, QQ, letter
from hopfzeta.shuffle import (
    SHUFFLE, STUFFLE, is_group_like, is_primitive, pi_x, pi_y_word, project, rho_word,
    series_product, shuffle, stuffle, unshuffle_coproduct, word_product,
)
from hopfzeta.words import AlphabetError, X, Y, is_convergent, words_of_weight, words_upto

xwords = st.lists(st.integers(0, 1), max_size=5).map(tuple)
ywords = st.lists(st.integers(1, 3), max_size=3).map(tuple)


def test_parse_format_roundtrip():
    assert X.parse("011") == (0, 1, 1)
    assert Y.parse("[2,1]") == (2, 1)
    assert X.format(()) == "()"
    assert Y.format(()) == "[]"
    with pytest.raises(AlphabetError):
        X.parse("012")
    with pytest.raises(AlphabetError):
        Y.validate((0, 1))


def test_word_counts():
    assert len(list(words_of_weight(X, 4))) == 16
    assert len(list(words_of_weight(Y, 4))) == 8  # compositions of 4
    assert words_upto(Y, 2) == [(), (1,), (1, 1), (2,)]


def test_shuffle_example():
    assert dict(word_product((0, 1), (1,), SHUFFLE)) == {(0, 1, 1): 2, (1, 0, 1): 1}


def test_stuffle_example():
    assert dict(word_product((1,), (1,), STUFFLE)) == {(1, 1): 2, (2,): 1}
    assert dict(word_product((1,), (2,), STUFFLE)) == {(1, 2): 1, (2, 1): 1, (3,): 1}


@given(xwords, xwords)
def test_shuffle_commutative_and_count(u, v):
    a, b = word_product(u, v, SHUFFLE), word_product(v, u, SHUFFLE)
    assert a == b
    assert sum(a.values()) == comb(len(u) + len(v), len(u))


@given(ywords, ywords, ywords)
def test_stuffle_associative(u, v, w):
    left = series_product(series_product(NCSeries.word(u, Y, 12), NCSeries.word(v, Y, 12), STUFFLE),
                          NCSeries.word(w, Y, 12), STUFFLE)
    right = series_product(NCSeries.word(u, Y, 12),
                           series_product(NCSeries.word(v, Y, 12), NCSeries.word(w, Y, 12), STUFFLE), STUFFLE)
    assert left == right


@given(ywords, ywords)
def test_stuffle_weight_homogeneous(u, v):
    assert all(sum(w) == sum(u) + sum(v) for w in word_product(u, v, STUFFLE))


@pytest.mark.parametrize("kind,alphabet,D", [(SHUFFLE, X, 4), (STUFFLE, Y, 4)])
def test_coproduct_is_dual_to_product(kind, alphabet, D):
    for w in words_upto(alphabet, D):
        cop = unshuffle_coproduct(w, kind, alphabet)
        for u in words_upto(alphabet, D):
            for v in words_upto(alphabet, D - alphabet.weight(u)):
                if alphabet.weight(u) + alphabet.weight(v) != alphabet.weight(w):
                    continue
                assert cop.get((u, v), 0) == word_product(u, v, kind).get(w, 0)


def test_exp_of_letter_is_group_like_and_letter_primitive():
    x0 = letter(0, X, 5)
    assert is_group_like(x0.exp(), SHUFFLE).ok
    assert is_primitive(x0, SHUFFLE).ok
    assert not is_group_like(x0 + 1, SHUFFLE).ok
    rep = is_primitive(x0 * x0, SHUFFLE)
    assert not rep.ok and rep.failing_pair is not None
    y1 = letter(1, Y, 4)
    assert is_group_like(y1.exp(), STUFFLE).ok  # letters are stuffle primitive
    assert not is_primitive(letter(2, Y, 4), STUFFLE).ok


def test_morphisms():
    assert pi_x((2, 1)) == (0, 1, 1)
    assert pi_y_word((0, 0, 1, 1)) == (3, 1)
    assert pi_y_word((1, 0)) is None
    assert rho_word((0, 1), "morphism") == (1, (1, 0))
    assert rho_word((0, 0, 1), "mirror") == (-1, (0, 1, 1))
    s = NCSeries({(0, 1): 3, (1, 0): 5}, X, 2)
    assert project(s, "PiY")[(2,)] == 3
    assert project(s, "PiY").degree == 2


@given(ywords)
def test_pi_roundtrip(w):
    assert pi_y_word(pi_x(w)) == w


def test_convergence():
    assert is_convergent((2, 1), Y) and not is_convergent((1, 2), Y)
    assert is_convergent((0, 1), X) and not is_convergent((0, 1, 0), X)
