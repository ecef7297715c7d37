import random

import pytest
from hypothesis import given, strategies as st

from hopfzeta import diagrams as dg
from hopfzeta.bell import bell_number, set_partitions
from hopfzeta.poly import Poly

qc, qs = Poly.symbol("qc"), Poly.symbol("qs")
D = dg.LabeledDiagram


def mats(max_rows=3, max_cols=3):
    return st.integers(1, max_rows).flatmap(
        lambda p: st.integers(1, max_cols).flatmap(
            lambda q: st.lists(st.lists(st.integers(0, 2), min_size=q, max_size=q), min_size=p, max_size=p)
        )
    ).filter(lambda m: all(any(r) for r in m) and all(any(r[j] for r in m) for j in range(len(m[0]))))


diagrams = mats().map(lambda m: D(tuple(map(tuple, m))))


def test_invalid_matrices():
    with pytest.raises(ValueError):
        D(((0, 0),))
    with pytest.raises(ValueError):
        D(((1, 0), (1, 0)))


def test_single_spot_product():
    p = dg.product(D(((1,),)), D(((1,),)))
    assert p == {D(((1, 0), (0, 1))): 1, D(((0, 1), (1, 0))): qc, D(((1, 1),)): qs}


def test_zero_parameters_give_concatenation():
    a, b = D(((1, 2),)), D(((1,), (3,)))
    assert dg.product(a, b, dg.DeformParams(0, 0)) == {dg.concat(a, b): 1}


@given(diagrams, diagrams, diagrams)
def test_associativity(a, b, c):
    assert dg.associativity_defect(a, b, c) is None


@given(diagrams)
def test_empty_is_unit(a):
    e = D.empty()
    assert dg.product(e, a) == {a: 1} == dg.product(a, e)


def test_canonical_form_invariance():
    rng = random.Random(1)
    for _ in range(50):
        m = [[rng.randint(0, 2) for _ in range(3)] for _ in range(3)]
        m[0][0] = m[1][1] = m[2][2] = 1
        rows = list(range(3)); cols = list(range(3))
        rng.shuffle(rows); rng.shuffle(cols)
        perm = tuple(tuple(m[i][j] for j in cols) for i in rows)
        assert dg.canonical_matrix(tuple(map(tuple, m))) == dg.canonical_matrix(perm)


@pytest.mark.parametrize("n", range(1, 6))
def test_multiplicities_sum_to_bell_squared(n):
    ds = dg.diagrams_with_edges(n)
    assert sum(dg.multiplicity(d, "formula") for d in ds) == bell_number(n) ** 2


def test_diagram_counts():
    assert [len(dg.diagrams_with_edges(n)) for n in range(1, 6)] == [1, 4, 10, 33, 91]


@pytest.mark.parametrize("n", range(1, 5))
def test_multiplicity_methods_agree(n):
    for d in dg.diagrams_with_edges(n):
        assert dg.multiplicity(d, "enumerate") == dg.multiplicity(d, "formula")


def test_diagram_of_pair():
    p = next(iter(set_partitions(3, 1)))
    d = dg.diagram_of_pair(p, p)
    assert d.matrix == ((3,),)


def test_coproduct_of_two_rows():
    d = D(((1, 0), (0, 2))).canonical()
    cop = dg.coproduct_bs(d)
    assert sum(cop.values()) == 4
    assert cop[(dg.Diagram.empty(), d)] == 1


@given(diagrams, diagrams)
def test_images_are_quasi_shuffles(a, b):
    from hopfzeta.shuffle import STUFFLE, SHUFFLE, word_product
    u, v = dg.word_image(a), dg.word_image(b)
    assert dg.image_of_sum(dg.product(a, b, dg.DeformParams(1, 1))) == dict(word_product(u, v, STUFFLE))
    assert dg.image_of_sum(dg.product(a, b, dg.DeformParams(1, 0))) == dict(word_product(u, v, SHUFFLE))


def test_hadamard_expansion():
    assert dg.hadamard_expansion_check([1, 2, -1, 3, 1], [2, 0, 1, -1, 1], 5)
    assert dg.hadamard_expansion_check([1, 1, 1], [1, 1, 1], 3, mult_method="enumerate")
