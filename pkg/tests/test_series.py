from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfzeta.poly import Poly
from hopfzeta.series import CC, POLY, QQ, RR, DomainError, NCSeries, ad_power, bracket, letter
from hopfzeta.words import X, Y

coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)
xseries = st.dictionaries(st.lists(st.integers(0, 1), min_size=1, max_size=3).map(tuple), coef, max_size=5)


@given(xseries)
def test_exp_log_inverse(d):
    s = NCSeries(d, X, 3)
    assert s.exp().log() == s
    e = s.exp()
    assert e * e.inverse() == NCSeries.one(X, 3)


@given(xseries, xseries, xseries)
def test_product_associative(a, b, c):
    A, B, C = (NCSeries(d, X, 3) for d in (a, b, c))
    assert (A * B) * C == A * (B * C)


def test_domains():
    s = NCSeries({(0,): Fraction(1, 3)}, X, 2)
    r = s.to_domain(RR(64))
    assert abs(float(r[(0,)]) - 1 / 3) < 1e-15
    with pytest.raises(DomainError):
        r + NCSeries({(0,): Poly.symbol("a")}, X, 2, POLY)
    assert (r + s).domain == RR(64)


def test_truncation():
    s = NCSeries({(0,): 1, (0, 1): 1, (1, 1, 1): 7}, X, 2)
    assert (1, 1, 1) not in s
    assert s.homogeneous_part(2)[(0, 1)] == 1


def test_ad_power():
    assert ad_power(1).to_dict() == {(0, 1): 1, (1, 0): -1}
    assert ad_power(2)[(0, 0, 1)] == 1 and ad_power(2)[(0, 1, 0)] == -2


def test_constant_needs_zero_for_exp():
    with pytest.raises(ValueError):
        NCSeries.one(X, 2).exp()
