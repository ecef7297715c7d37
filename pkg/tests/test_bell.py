from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hopfzeta.bell import (
    EGFSeries, SetPartition, bell_number, bell_polynomial, bell_polynomial_bruteforce, hadamard_exp,
    partition_types, set_partitions, stirling2, type_count,
)
from hopfzeta.poly import Poly


def test_bell_numbers():
    assert [bell_number(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    for n in range(1, 8):
        assert len(list(set_partitions(n))) == bell_number(n)
        assert sum(stirling2(n, k) for k in range(n + 1)) == bell_number(n)


def test_partitions_are_distinct_and_valid():
    ps = list(set_partitions(5))
    assert len({p.blocks for p in ps}) == len(ps)
    for p in ps:
        assert SetPartition.from_blocks(p.blocks) == p


def test_small_polynomials():
    X1, X2, X3 = (Poly.symbol(f"X{i}") for i in (1, 2, 3))
    assert bell_polynomial(2) == X2 + X1 * X1
    assert bell_polynomial(3, 2) == X1 * X2 * 3
    assert bell_polynomial(3) == X3 + X1 * X2 * 3 + X1 ** 3


@pytest.mark.parametrize("n", range(0, 7))
def test_grouped_equals_bruteforce(n):
    assert bell_polynomial(n) == bell_polynomial_bruteforce(n)
    for k in range(n + 1):
        assert bell_polynomial(n, k) == bell_polynomial_bruteforce(n, k)


def test_all_ones_gives_bell_numbers():
    assert [bell_polynomial(n, None, [1] * max(n, 1)) for n in range(1, 8)] == [bell_number(n) for n in range(1, 8)]


def test_type_counts():
    assert type_count((1, 1, 0)) == 3
    assert sum(c for _, c in partition_types(6)) == bell_number(6)


coefs = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=5, max_size=5)


@given(coefs)
def test_exp_of_matches_bell(x):
    e = EGFSeries.exp_of(x, 5)
    for n in range(1, 6):
        assert e[n] == bell_polynomial(n, None, x)


@given(coefs, coefs)
def test_hadamard_methods_agree(a, b):
    F, G = EGFSeries([1] + a), EGFSeries([1] + b)
    assert hadamard_exp(F, G, "componentwise") == hadamard_exp(F, G, "substitution")


def test_enumeration_bound():
    with pytest.raises(ValueError):
        list(set_partitions(13))
