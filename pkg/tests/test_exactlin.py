import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from albert.errors import DimensionMismatch, FieldMismatch
from albert.exactlin import (GF, QQ, Dual, Quotient, Sampler, Subspace, annihilator, derive_seed,
                             det, dual_parts, identity, image, inverse, join, kernel, mat_mul,
                             meet, pfaffian, rank, rref, sample_vector, solve)

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=max_rows))


def test_rref_normalizes_scaling():
    s = rref([[2, 0], [0, 2]], QQ)
    assert s.basis == ((1, 0), (0, 1))


def test_dependent_rows():
    s = rref([[1, 2], [2, 4]], QQ)
    assert s.basis == ((1, 2),) and s.dim == 1


def test_empty_span():
    s = rref([], QQ, 3)
    assert s.dim == 0 and s.ambient_dim == 3


def test_meet_join_examples():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], QQ)
    b = Subspace.span([[0, 1, 0], [0, 0, 1]], QQ)
    assert meet(a, b).basis == ((0, 1, 0),)
    assert join(a, b) == Subspace.full(3, QQ)


def test_kernel_of_zero_map():
    assert kernel([[0] * 5] * 2, QQ) == Subspace.full(5, QQ)


def test_annihilator_identity_pairing():
    a = Subspace.span([[1, 0, 0]], QQ)
    assert annihilator(a, identity(3, QQ)).basis == ((0, 1, 0), (0, 0, 1))


def test_mismatched_ambients_raise():
    with pytest.raises(DimensionMismatch):
        join(Subspace.full(2, QQ), Subspace.full(3, QQ))
    with pytest.raises(FieldMismatch):
        join(Subspace.full(2, QQ), Subspace.full(2, GF()))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    ours = rref(m, QQ)
    theirs, _ = sympy.Matrix(m).rref()
    want = [tuple(theirs.row(i)) for i in range(theirs.rows) if any(theirs.row(i))]
    as_sympy = [tuple(sympy.Rational(int(x.numerator), int(x.denominator)) for x in r)
                for r in ours.basis]
    assert as_sympy == want
    assert rank(m, QQ) == sympy.Matrix(m).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent_and_rank_nullity(m):
    s = rref(m, QQ)
    assert rref(s.basis, QQ, s.ambient_dim) == s
    k = kernel(m, QQ)
    assert s.dim + k.dim == len(m[0])
    for v in k.basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_meet_join_dimension_formula(m1, m2):
    n = max(len(m1[0]), len(m2[0]))
    pad = lambda m: [r + [0] * (n - len(r)) for r in m]
    a, b = rref(pad(m1), QQ, n), rref(pad(m2), QQ, n)
    assert join(a, b).dim + meet(a, b).dim == a.dim + b.dim
    assert meet(a, b) <= a and a <= join(a, b)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_image_is_column_space(seed):
    s = Sampler(seed, GF())
    m = s.matrix(4, 3)
    img = image(m, GF())
    for j in range(3):
        assert tuple(m[i][j] for i in range(4)) in img


def test_det_inverse_solve_against_sympy():
    s = Sampler(11, QQ)
    for _ in range(20):
        m = s.matrix(4, 4)
        assert det(m, QQ) == sympy.Matrix(m).det()
        if det(m, QQ):
            assert mat_mul(m, inverse(m, QQ)) == identity(4, QQ)
            b = s.vector(4)
            x = solve(m, b, QQ)
            assert [sum(r[j] * x[j] for j in range(4)) for r in m] == list(b)


def test_pfaffian_squares_to_determinant():
    s = Sampler(5, QQ)
    for _ in range(10):
        u = s.matrix(4, 4)
        m = [[u[i][j] - u[j][i] for j in range(4)] for i in range(4)]
        assert pfaffian(m) ** 2 == det(m, QQ)


def test_gf_arithmetic():
    f = GF(7)
    assert f(3) * f(5) == f(1)
    assert f(1) / f(3) == f(5)
    assert f(-1) == f(6)
    assert f.fmt(f(-1)) == "6"


def test_quotient_dimensions():
    small_ = Subspace.span([[1, 0, 0, 0]], QQ)
    q = Quotient.of_ambient(small_)
    assert q.dim == 3
    assert q.preimage(Subspace.zero(4, QQ)) == small_


def test_sample_vector_is_deterministic():
    assert sample_vector(3, 0) == sample_vector(3, 0)
    distinct = {sample_vector(6, s) for s in range(100)}
    assert len(distinct) > 90


def test_derive_seed_stable():
    assert derive_seed(0, "x", 1) == derive_seed(0, "x", 1)
    assert derive_seed(0, "x", 1) != derive_seed(0, "x", 2)


def test_dual_numbers():
    e = Dual(0, 1)
    x = Dual(3, 0) + e
    assert dual_parts(x * x) == (9, 6)
    assert dual_parts(e * e) == (0, 0)
