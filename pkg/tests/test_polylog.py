"""Numeric values checked against mpmath and closed forms (frozen oracles)."""
from fractions import Fraction

import mpmath
import pytest

from hopfzeta.polylog import (
    DivergentWordError, NumericError, chen_series, const_series, harmonic_sum, harmonic_tail_bound,
    mono_series, polylog, zeta_value, L_series, H_series,
)
from hopfzeta.shuffle import SHUFFLE, STUFFLE, is_group_like
from hopfzeta.words import X, Y
from hopfzeta.zetacache import ZetaCache

mpmath.mp.prec = 128
pi = mpmath.pi
Z3 = mpmath.zeta(3)
Z4 = pi ** 4 / 90


def close(a, b, tol):
    return abs(a.value - b) <= a.bound and a.bound <= tol


@pytest.mark.parametrize("word, ref", [
    ((2,), pi ** 2 / 6),
    ((3,), Z3),
    ((4,), Z4),
    ((2, 1), Z3),
    ((3, 1), pi ** 4 / 360),
    ((2, 2), Z4 * 3 / 4),
    ((2, 1, 1), Z4),
    ((5,), mpmath.zeta(5)),
])
def test_zeta_closed_forms(word, ref):
    a = zeta_value(word, tol=1e-15, cache=None)
    assert abs(a.value - ref) <= a.bound
    assert a.bound <= 1e-15


def test_zeta_harmonic_method_loose():
    a = zeta_value((2,), tol=1e-5, method="harmonic", cache=None)
    assert abs(a.value - pi ** 2 / 6) <= a.bound <= 1e-5


def test_harmonic_method_refuses_strict_tolerance():
    with pytest.raises(NumericError):
        zeta_value((2,), tol=1e-12, method="harmonic", cache=None)


@pytest.mark.parametrize("w", [(1,), (1, 2), ()])
def test_divergent_words(w):
    with pytest.raises(DivergentWordError):
        zeta_value(w, cache=None)


def test_x_alphabet_zeta():
    a = zeta_value((0, 1, 1), alphabet=X, tol=1e-12, cache=None)
    assert abs(a.value - Z3) <= a.bound


@pytest.mark.parametrize("w, z", [((0, 1), 0.5), ((0, 0, 1), 0.3), ((1,), 0.7), ((0, 1), -0.4)])
def test_classical_polylogs_vs_mpmath(w, z):
    a = polylog(w, z, tol=1e-25)
    assert abs(a.value - mpmath.polylog(len(w), z)) <= a.bound + 1e-30


def test_li2_half_closed_form():
    a = polylog((0, 1), Fraction(1, 2), tol=1e-25)
    assert abs(a.value - (pi ** 2 / 12 - mpmath.log(2) ** 2 / 2)) <= a.bound


def test_x0_powers_are_log_powers_over_factorial():
    for k in range(1, 4):
        a = polylog((0,) * k, 0.3, tol=1e-20)
        assert abs(a.value - mpmath.log(0.3) ** k / mpmath.factorial(k)) < 1e-25


def test_li_x1x0_via_shuffle():
    # x1 x0 = x0 sh x1 - x0 x1, so Li_{x1x0} = log z Li_1 - Li_2
    z = 0.4
    a = polylog((1, 0), z, tol=1e-20)
    ref = mpmath.log(z) * -mpmath.log(1 - z) - mpmath.polylog(2, z)
    assert abs(a.value - ref) < 1e-20


def test_nested_polylog_as_series():
    # Li_{2,1}(z) = sum_{n>m>0} z^n / (n^2 m)
    z = mpmath.mpf("0.25")
    ref = mpmath.nsum(lambda n: z ** n / n ** 2 * mpmath.harmonic(n - 1), [1, mpmath.inf])
    a = polylog((2, 1), z, alphabet=Y, tol=1e-25)
    assert abs(a.value - ref) < 1e-24


def test_exact_harmonic_sums():
    assert harmonic_sum((1,), 3) == Fraction(11, 6)
    assert harmonic_sum((2, 1), 2) == Fraction(1, 4)
    assert harmonic_sum((2, 1), 3) == Fraction(5, 12)
    assert harmonic_sum((), 5) == 1
    assert harmonic_sum((1,), 0) == 0
    assert harmonic_sum((3,), 500) == sum(Fraction(1, n ** 3) for n in range(1, 501))


def test_tail_bound_brackets_partial_sum():
    N = 1000
    tail = float(Z3 - mpmath.mpf(harmonic_sum((3,), N).numerator) / harmonic_sum((3,), N).denominator)
    assert 0 < tail <= harmonic_tail_bound((3,), N)


def test_generating_series_are_group_like():
    assert is_group_like(H_series(12, 3), STUFFLE).ok
    L = L_series(0.3, 3, prec=96, tol=1e-20)
    assert is_group_like(L, SHUFFLE, 1e-18).ok


def test_mono_forms_agree():
    a = mono_series(0.4, 4, form="closed")
    b = mono_series(0.4, 4, form="sums")
    assert a.max_abs_diff(b) < 1e-20


def test_const_forms_agree():
    assert const_series(7, 4, form="harmonic") == const_series(7, 4, form="exp")


def test_chen_methods_agree():
    a = chen_series(0.2, 0.6, 3, method="lyndon")
    b = chen_series(0.2, 0.6, 3, method="ode", steps=2000)
    assert a.max_abs_diff(b) < 1e-11


def test_chen_degree_one():
    s = chen_series(0.2, 0.6, 1)
    z0, z1 = mpmath.mpf(0.2), mpmath.mpf(0.6)
    assert abs(s[(0,)] - mpmath.log(z1 / z0)) < 1e-25
    assert abs(s[(1,)] - mpmath.log((1 - z0) / (1 - z1))) < 1e-25


def test_cache_round_trip(tmp_path):
    c = ZetaCache(tmp_path / "z.jsonl")
    a = zeta_value((3,), tol=1e-12, cache=c)
    again = zeta_value((3,), tol=1e-12, cache=ZetaCache(tmp_path / "z.jsonl"))
    assert again.value == a.value and again.bound == a.bound
