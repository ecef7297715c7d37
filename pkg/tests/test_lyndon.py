from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfzeta.lyndon import (
    GroupLikeError, cfl_factorize, dual_pbw, exp_factorize, exp_product, is_lyndon, lyndon_rewrite,
    lyndon_words, necklace_count, pairing, pbw, stuffle_lyndon,
)
from hopfzeta.poly import Poly
from hopfzeta.series import NCSeries, letter
from hopfzeta.shuffle import SHUFFLE, STUFFLE, is_primitive
from hopfzeta.words import X, Y, keyed, order_key, words_upto

xwords = st.lists(st.integers(0, 1), min_size=1, max_size=9).map(tuple)
ywords = st.lists(st.integers(1, 4), min_size=1, max_size=6).map(tuple)


def test_small_lists():
    assert lyndon_words(X, 3, by_weight=True) == [(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1)]
    assert set(lyndon_words(Y, 3, "y1_largest", by_weight=True)) == {(1,), (2,), (2, 1), (3,)}


@pytest.mark.parametrize("n", range(1, 9))
def test_necklace_counts(n):
    assert sum(1 for w in lyndon_words(X, n) if len(w) == n) == necklace_count(n, 2)


@given(xwords)
def test_cfl_factorization(w):
    fs = cfl_factorize(w)
    assert tuple(a for f in fs for a in f) == w
    assert all(is_lyndon(f) for f in fs)
    assert all(fs[i] >= fs[i + 1] for i in range(len(fs) - 1))


@given(ywords)
def test_cfl_y1_largest(w):
    key = order_key("y1_largest")
    fs = cfl_factorize(w, "y1_largest")
    assert tuple(a for f in fs for a in f) == w
    assert all(keyed(fs[i], key) >= keyed(fs[i + 1], key) for i in range(len(fs) - 1))


def test_y1_largest_lyndon_words_are_convergent():
    for l in lyndon_words(Y, 6, "y1_largest"):
        assert l == (1,) or l[0] >= 2


def test_pbw_duality_through_weight_5():
    ws = [w for w in words_upto(X, 5) if w]
    for u in ws:
        P = pbw(u, X)
        for v in ws:
            if len(v) == len(u):
                assert pairing(P, dual_pbw(v, X)) == (1 if u == v else 0)


@pytest.mark.parametrize("l", lyndon_words(X, 5))
def test_lyndon_brackets_are_primitive(l):
    assert is_primitive(pbw(l, X), SHUFFLE).ok


@pytest.mark.parametrize("l", lyndon_words(Y, 4, "y1_largest"))
def test_stuffle_lyndon_primitive(l):
    assert is_primitive(stuffle_lyndon(l), STUFFLE).ok
    assert stuffle_lyndon(l)[l] == 1


def test_rewrite_examples():
    assert lyndon_rewrite((1, 0)) == Poly.symbol("l0") * Poly.symbol("l1") - Poly.symbol("l01")
    y = lambda s: Poly.symbol(f"l[{s}]")
    assert lyndon_rewrite((1, 2), STUFFLE, order="y1_largest") == y(1) * y(2) - y("2,1") - y(3)


def test_exp_factorize_roundtrip_exact():
    D = 4
    s = letter(0, X, D).exp() * (letter(1, X, D) * Fraction(1, 3)).exp()
    c = exp_factorize(s)
    assert exp_product(c, SHUFFLE, X, D) == s
    assert c[(0,)] == 1 and c[(1,)] == Fraction(1, 3)


def test_exp_factorize_stuffle_roundtrip():
    D = 4
    cs = {(2,): Fraction(1, 2), (2, 1): Fraction(-1, 3), (1,): 2}
    s = exp_product(cs, STUFFLE, Y, D, "increasing", "y1_largest")
    back = exp_factorize(s, STUFFLE, "increasing", "y1_largest")
    assert {k: v for k, v in back.items() if v} == cs


def test_exp_factorize_rejects_non_group_like():
    with pytest.raises(GroupLikeError) as exc:
        exp_factorize(NCSeries({(): 1, (0,): 1, (0, 0): 1}, X, 2))
    assert exc.value.pair is not None
