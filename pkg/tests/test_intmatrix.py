import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from kanenobu.intmatrix import (
    AbelianStructure,
    IntMatrix,
    determinant,
    knot_determinant,
    smith_normal_form,
)
from kanenobu.presentations import kanenobu_matrix
from kanenobu.diagrams import KanenobuParams


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)
rect = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda hw: st.lists(st.lists(st.integers(-9, 9), min_size=hw[1], max_size=hw[1]), min_size=hw[0], max_size=hw[0])
)


def test_identity_snf():
    snf = smith_normal_form(IntMatrix.identity(4))
    assert snf.structure.invariant_factors == (1, 1, 1, 1)
    assert snf.structure.free_rank == 0


def test_snf_cyclic_member():
    st_ = smith_normal_form(kanenobu_matrix(KanenobuParams(2, 0, 1))).structure
    assert st_.invariant_factors == (1, 1, 1, 25)
    assert st_.is_cyclic


def test_snf_noncyclic_member():
    # frozen from sympy's invariant_factors
    st_ = smith_normal_form(kanenobu_matrix(KanenobuParams(2, 0, 5))).structure
    assert st_.invariant_factors == (1, 1, 5, 5)
    assert not st_.is_cyclic


def test_determinant_examples():
    assert knot_determinant(IntMatrix.from_lists([[1]])) == 1
    m = kanenobu_matrix(KanenobuParams(2, 0, 0))
    assert knot_determinant(m.submatrix([2, 3], [2, 3])) == 5
    for p in range(-5, 6):
        for q in range(-5, 6):
            assert knot_determinant(kanenobu_matrix(KanenobuParams(2, p, q))) == 25


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        IntMatrix(((1, 2), (3,)))
    with pytest.raises(ValueError):
        determinant(IntMatrix.from_lists([[1, 2]]))
    with pytest.raises(ValueError):
        AbelianStructure((2, 3))


def test_json_round_trip_big_entries():
    m = IntMatrix.from_lists([[10 ** 30, -1], [2, 3]])
    assert IntMatrix.from_json(m.to_json()) == m
    assert m.to_json()[0][0] == "1" + "0" * 30


@settings(max_examples=60, deadline=None)
@given(square)
def test_bareiss_matches_sympy(rows):
    assert determinant(IntMatrix.from_lists(rows)) == Matrix(rows).det()


@settings(max_examples=60, deadline=None)
@given(rect)
def test_snf_transforms(rows):
    m = IntMatrix.from_lists(rows)
    snf = smith_normal_form(m)
    assert (snf.U @ m @ snf.V) == snf.diagonal
    assert snf.diagonal.is_diagonal()
    assert abs(determinant(snf.U)) == 1 and abs(determinant(snf.V)) == 1
    fs = snf.structure.invariant_factors
    assert all(b % a == 0 for a, b in zip(fs, fs[1:]))


@settings(max_examples=40, deadline=None)
@given(square)
def test_snf_matches_sympy(rows):
    ours = smith_normal_form(IntMatrix.from_lists(rows)).structure
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = tuple(x for x in theirs if x)
    assert ours.invariant_factors == nonzero
    assert ours.free_rank == len(rows) - len(nonzero)
