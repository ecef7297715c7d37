from fractions import Fraction

from hypothesis import given, strategies as st

from hopfzeta.poly import Poly

a, b = Poly.symbol("a"), Poly.symbol("b")
small = st.builds(lambda i, j, k: a * i + b * j + k, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


def test_str_is_canonical():
    assert str((a + b) ** 2) == "2*a*b + a^2 + b^2"
    assert str(Poly()) == "0"
    assert (a - a).is_zero()


@given(small, small, small)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


def test_evaluate_substitute():
    p = a * a * Fraction(1, 2) + b
    assert p.evaluate({"a": 2, "b": 3}) == 5
    assert p.substitute({"b": a}) == a * a * Fraction(1, 2) + a
