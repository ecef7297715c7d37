import pytest

from hopfzeta.associator import (
    ActionError, act_by_exp, adjoint_expansion, b_series, bridge_relations, evaluate,
    functional_equation_check, gamma_degree, is_homogeneous, monodromy_series, proposition_check,
    regularization_drift, weights, z_series, zeta_reg, zeta_symbol, gamma_symbol,
)
from hopfzeta.poly import Poly
from hopfzeta.series import NCSeries, QQ, bracket, letter
from hopfzeta.shuffle import SHUFFLE, STUFFLE, is_group_like, project, word_product
from hopfzeta.words import X, Y, words_upto

z = zeta_symbol
g = gamma_symbol()


def test_reg_examples():
    assert zeta_reg((1, 1), "stuffle_Y") == z((2,)) * Poly.constant(-1) / 2
    assert zeta_reg((1, 0), "shuffle_X") == -z((2,))
    assert zeta_reg((1, 2), "stuffle_Y") == -z((2, 1)) - z((3,))
    assert zeta_reg((1, 0, 1), "shuffle_X") == z((2, 1)) * -2
    assert zeta_reg((0, 1), "shuffle_X") == z((2,))
    assert zeta_reg((1,), "shuffle_X") == Poly() == zeta_reg((0,), "shuffle_X")
    with pytest.raises(ValueError):
        zeta_reg((1,), "bogus")


def _char_defect(kind, alphabet, n):
    ws = [w for w in words_upto(alphabet, n) if w]
    for u in ws:
        for v in ws:
            if alphabet.weight(u) + alphabet.weight(v) > n:
                continue
            lhs = zeta_reg(u, kind) * zeta_reg(v, kind)
            rhs = Poly()
            for w, c in word_product(u, v, SHUFFLE if kind == "shuffle_X" else STUFFLE).items():
                rhs = rhs + zeta_reg(w, kind) * c
            if lhs != rhs:
                return u, v
    return None


def test_shuffle_character_exact():
    assert _char_defect("shuffle_X", X, 5) is None


def test_stuffle_character_exact():
    assert _char_defect("stuffle_Y", Y, 5) is None


def test_reg_values_homogeneous():
    for w in words_upto(X, 5):
        p = zeta_reg(w, "shuffle_X")
        assert not p or weights(p) == {len(w)}


def test_series_group_like():
    assert is_group_like(z_series("Z_shuffle", 4), SHUFFLE).ok
    assert is_group_like(z_series("Z_stuffle", 4), STUFFLE).ok


def test_b_series_values():
    B, Bp = z_series("B", 3), z_series("Bprime", 3)
    assert B[(1,)] == g and Bp[(1,)] == Poly()
    assert Bp[(1, 1, 1)] == z((3,)) / 3
    assert z_series("Psi_KZ", 2)[(1,)] == g
    for w in words_upto(Y, 3):
        assert gamma_degree(Bp[w]) == 0


def test_b_is_inverse_gamma_numerically():
    import mpmath
    mpmath.mp.prec = 128
    t = mpmath.mpf("0.1")
    B = b_series(5)
    approx = sum(evaluate(B[(1,) * n], 1e-20).value * t ** n for n in range(6))
    assert abs(approx - 1 / mpmath.gamma(1 + t)) < 1e-5


@pytest.mark.parametrize("D", range(5))
def test_adjoint_expansion(D):
    assert adjoint_expansion(D) == z_series("Phi_KZ", D)


def test_phi_low_degree():
    phi = z_series("Phi_KZ", 3)
    assert phi[(0, 1)] == z((2,)) and phi[(1, 0)] == -z((2,))
    assert phi[(0, 0, 1)] == z((3,))
    assert phi[(0, 1, 1)] == z((2, 1))


def test_monodromy_group_like():
    M1 = monodromy_series("M1", 3, prec=96)
    assert is_group_like(M1, SHUFFLE, 1e-20).ok
    M0 = monodromy_series("M0", 3, prec=96)
    assert abs(M0[(0, 0)] - (2j * 3.141592653589793) ** 2 / 2) < 1e-12


def test_act_by_zero_is_identity():
    C = NCSeries({}, X, 3, QQ)
    phi, psi = act_by_exp(C)
    assert phi == z_series("Phi_KZ", 3)
    assert psi == b_series(3) * project(phi, "PiY")
    assert psi[(2,)] == z((2,)) and psi[(1,)] == g


def test_act_by_lie_element():
    D = 4
    C = bracket(letter(0, X, D), letter(1, X, D)) * 3
    res = act_by_exp(C)
    assert res.lemma_ok
    assert is_group_like(res.phi, SHUFFLE).ok
    assert res.phi[(0, 1)] == z((2,)) + 3


def test_act_rejects_bad_input():
    D = 3
    with pytest.raises(ActionError):
        act_by_exp(letter(0, X, D) * letter(1, X, D))
    with pytest.raises(ActionError):
        act_by_exp(letter(0, X, D))
    with pytest.raises(ActionError):
        act_by_exp(letter(1, Y, D))


def test_proposition_on_image_words():
    r = proposition_check(3)
    assert r["ok"] and r["image_residual"] < 1e-8


def test_functional_equation_selects_morphism():
    rep = functional_equation_check(0.3, 2)
    assert rep.selected == "morphism"
    assert rep.residuals["mirror"] > 1e-2


def test_regularization_drift_decreases():
    d = regularization_drift((1e-2, 1e-3), D=2)
    assert d[1] < d[0]


def test_bridge_relations_low_weight():
    assert bridge_relations(2).relations == []
    rels = bridge_relations(3).relations
    assert [str(r.relation) for r in rels] == ["-zeta(2,1) + zeta(3)"]
    for r in bridge_relations(4).relations:
        assert gamma_degree(r.relation) == 0 and is_homogeneous(r.relation)
        assert r.residual <= max(r.bound, 1e-6)
