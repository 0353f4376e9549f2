from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflab.errors import (
    CompositionError,
    FieldError,
    NotIdempotentError,
    ScalarFormatError,
    SingularError,
)
from hopflab.linalg import (
    QQ,
    FieldSpec,
    Matrix,
    Morphism,
    identity,
    mat_compose,
    mat_inverse,
    mat_tensor,
    obj,
    rank,
    rref,
    split_idempotent,
    swap_matrix,
)

GF7 = FieldSpec.prime(7)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def small_matrix(field, rows, cols):
    elems = fractions if not field.is_prime else st.integers(0, field.p - 1)
    return st.lists(st.lists(elems, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda r: Matrix.from_rows(field, r))


def naive_mul(a, b):
    ra, rb = a.rows(), b.rows()
    return [[sum((ra[i][k] * rb[k][j] for k in range(len(rb))), Fraction(0)) for j in range(len(rb[0]))]
            for i in range(len(ra))]


# ---------------------------------------------------------------- scalars


@given(fractions)
def test_rational_literal_round_trip(x):
    text = QQ.format_scalar(x)
    assert QQ.parse_scalar(text) == x
    assert QQ.format_scalar(QQ.parse_scalar(text)) == text


@given(st.integers(0, 6))
def test_residue_literal_round_trip(x):
    assert GF7.parse_scalar(GF7.format_scalar(x)) == x


@pytest.mark.parametrize("bad", ["2/4", "1/-2", "+1", "01", "1/1", "-0", " 1", "1.5", ""])
def test_non_canonical_rationals_rejected(bad):
    with pytest.raises(ScalarFormatError):
        QQ.parse_scalar(bad)


@pytest.mark.parametrize("bad", ["7", "-1", "1/2", "12"])
def test_non_canonical_residues_rejected(bad):
    with pytest.raises(ScalarFormatError):
        GF7.parse_scalar(bad)


def test_field_parsing():
    assert FieldSpec.parse("Q") == QQ
    assert FieldSpec.parse("GF(7)") == GF7
    assert FieldSpec.parse(7) == GF7
    with pytest.raises(FieldError):
        FieldSpec.prime(9)


def test_gf_inverse():
    assert all((GF7.inv(x) * x) % 7 == 1 for x in range(1, 7))


# ---------------------------------------------------------------- matrices


@settings(max_examples=40)
@given(small_matrix(QQ, 3, 4), small_matrix(QQ, 4, 2))
def test_product_matches_naive(a, b):
    assert (a @ b).rows() == naive_mul(a, b)


@settings(max_examples=30)
@given(small_matrix(QQ, 2, 2), small_matrix(QQ, 2, 3), small_matrix(QQ, 2, 2), small_matrix(QQ, 3, 2))
def test_kron_mixed_product(a, b, c, d):
    assert a.kron(b) @ c.kron(d) == (a @ c).kron(b @ d)


@settings(max_examples=30)
@given(small_matrix(GF7, 3, 3), small_matrix(GF7, 3, 3), small_matrix(GF7, 3, 3))
def test_gf_associativity(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


def test_canonical_equality_ignores_representation():
    a = Matrix.from_rows(QQ, [[Fraction(1, 2), Fraction(2, 4)]])
    b = Matrix.from_rows(QQ, [[Fraction(1, 2), Fraction(1, 2)]])
    assert a == b
    assert a.literal() == [["1/2", "1/2"]]


def test_large_entries_stay_exact():
    big = Matrix.from_rows(QQ, [[10 ** 12, 1], [0, 10 ** 12]])
    cube = big @ big @ big
    assert cube.entry(0, 0) == 10 ** 36
    assert cube.entry(0, 1) == 3 * 10 ** 24


def test_first_difference_reports_entry():
    a = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    b = Matrix.from_rows(QQ, [[1, 2], [3, 5]])
    assert a.first_difference(b) == (1, 1, 4, 5)


# -------------------------------------------------------------- morphisms


def test_compose_and_tensor_signatures():
    v, w = obj("V", 2), obj("W", 3)
    f = Morphism(v, w, Matrix.zeros(QQ, 3, 2))
    g = Morphism(w, v, Matrix.zeros(QQ, 2, 3))
    assert mat_compose(f, g).dom == w
    assert mat_tensor(f, g).dom == v * w
    with pytest.raises(CompositionError):
        mat_compose(f, f)


def test_swap_is_involutive_and_natural():
    v, w = obj("V", 2), obj("W", 3)
    s, t = swap_matrix(v, w), swap_matrix(w, v)
    assert (t.mat @ s.mat) == Matrix.identity(QQ, 6)
    f = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    g = Matrix.from_rows(QQ, [[0, 1, 0], [5, 0, 1], [1, 1, 1]])
    assert s.mat @ f.kron(g) == g.kron(f) @ s.mat


def test_swap_index_convention():
    s = swap_matrix(obj("X", 2), obj("Y", 3))
    # basis vector i*3 + j goes to j*2 + i
    assert s.mat.entry(1 * 2 + 0, 0 * 3 + 1) == 1


@settings(max_examples=30)
@given(small_matrix(QQ, 3, 3))
def test_rref_rank_agree_with_pivots(m):
    reduced, pivots = rref(m)
    assert rank(m) == len(pivots)
    assert all(reduced.entry(r, c) == 1 for r, c in enumerate(pivots))


@settings(max_examples=30)
@given(small_matrix(QQ, 3, 3))
def test_inverse_or_singular(m):
    f = Morphism(obj("V", 3), obj("V", 3), m)
    if rank(m) == 3:
        assert m @ mat_inverse(f).mat == Matrix.identity(QQ, 3)
    else:
        with pytest.raises(SingularError) as info:
            mat_inverse(f)
        assert info.value.rank == rank(m)


# ---------------------------------------------------------------- splitting


def test_split_of_projection_onto_diagonal():
    q = Morphism(obj("V", 2), obj("V", 2), Matrix.from_rows(QQ, [[Fraction(1, 2), Fraction(1, 2)],
                                                                [Fraction(1, 2), Fraction(1, 2)]]))
    s = split_idempotent(q)
    assert s.rank == 1
    assert s.i.mat @ s.p.mat == q.mat
    assert s.p.mat @ s.i.mat == Matrix.identity(QQ, 1)


@settings(max_examples=30)
@given(small_matrix(QQ, 3, 3), st.integers(1, 3))
def test_split_random_idempotents(a, r):
    if rank(a) < 3:
        return
    inv = mat_inverse(Morphism(obj("V", 3), obj("V", 3), a)).mat
    diag = Matrix.from_rows(QQ, [[1 if i == j and i < r else 0 for j in range(3)] for i in range(3)])
    q = Morphism(obj("V", 3), obj("V", 3), a @ diag @ inv)
    s = split_idempotent(q)
    assert s.rank == r
    assert s.i.mat @ s.p.mat == q.mat
    assert s.p.mat @ s.i.mat == Matrix.identity(QQ, r)


def test_split_rejects_non_idempotent_with_witness():
    q = Morphism(obj("V", 2), obj("V", 2), Matrix.from_rows(QQ, [[1, 1], [0, 1]]))
    with pytest.raises(NotIdempotentError) as info:
        split_idempotent(q)
    assert info.value.witness == (0, 1, 2, 1)


def test_split_rejects_zero():
    with pytest.raises(NotIdempotentError):
        split_idempotent(Morphism(obj("V", 2), obj("V", 2), Matrix.zeros(QQ, 2, 2)))


def test_identity_splits_to_itself():
    s = split_idempotent(identity(obj("V", 3), GF7))
    assert s.rank == 3 and s.i.mat == Matrix.identity(GF7, 3)
