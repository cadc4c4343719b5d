from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariants

from mackeykit import linalg
from mackeykit.errors import FieldRequired, MalformedInput
from mackeykit.rings import GF, QQ, ZZ as RZ, Ring, is_prime

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


# -- rings -------------------------------------------------------------------


def test_parse_and_print():
    assert str(Ring.parse("F2")) == "Fp:2"
    assert str(Ring.parse("Zn:6")) == "Zn:6"
    assert Ring.parse("Q").is_field and not Ring.parse("Z").is_field
    with pytest.raises(MalformedInput):
        Ring.parse("Fp:4")
    with pytest.raises(MalformedInput):
        Ring.parse("R")


def test_field_inverses():
    F = GF(7)
    for a in range(1, 7):
        assert F.mul(a, F.inv(a)) == 1
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)


def test_encode_roundtrip():
    for R, x in [(QQ, Fraction(-5, 3)), (RZ, 10**30), (GF(5), 4)]:
        assert R.decode(R.encode(x)) == x
    assert QQ.encode(Fraction(4, 2)) == "2"


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


# -- elimination -------------------------------------------------------------


@given(matrices(), st.sampled_from(["Fp:2", "Fp:3", "Q"]))
def test_nullspace_is_kernel_of_right_size(A, rname):
    R = Ring.parse(rname)
    A = linalg.coerce_matrix(A, R)
    n = len(A[0])
    ker = linalg.nullspace(A, n, R)
    for v in ker:
        assert not any(linalg.mat_vec(A, v, R))
    assert len(ker) + linalg.rank(A, R) == n


def test_nullspace_over_f2_brute_force():
    A = [[1, 1, 0, 1], [0, 1, 1, 1]]
    F = GF(2)
    brute = [v for v in product(range(2), repeat=4) if not any(linalg.mat_vec(A, v, F))]
    assert 2 ** len(linalg.nullspace(A, 4, F)) == len(brute)


@given(matrices())
def test_integer_kernel_is_saturated(A):
    n = len(A[0])
    ker = linalg.integer_kernel(A, n)
    for v in ker:
        assert not any(linalg.mat_vec(A, v, RZ))
    assert len(ker) == n - Matrix(A).rank()
    if ker:
        # saturated: the kernel lattice has trivial torsion in Z^n
        assert all(d == 1 for d in linalg.invariant_factors(linalg.transpose(ker)) if d)


def test_rank_needs_a_field_over_zn():
    with pytest.raises(FieldRequired):
        linalg.rank([[2, 0], [0, 3]], Ring.parse("Zn:6"))


# -- Smith and Hermite forms ----------------------------------------------------


@given(matrices())
def test_snf_transforms(A):
    diag, U, V = linalg.snf(A)
    D = linalg.mat_mul(linalg.mat_mul(U, A, RZ), V, RZ)
    m, n = len(A), len(A[0])
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (diag[i] if i == j else 0)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices())
def test_invariant_factors_match_sympy(A):
    ours = [d for d in linalg.invariant_factors(A) if d]
    theirs = [int(d) for d in sympy_invariants(Matrix(A), domain=ZZ) if d]
    assert ours == theirs


def test_known_smith_form():
    A = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    assert linalg.invariant_factors(A)[:3] == [1, 10, 30]


@given(matrices())
def test_hnf_basis_spans_same_lattice(A):
    n = len(A[0])
    B = linalg.hnf_basis(A, n)
    for v in A:
        assert linalg.span_coordinates(B, v, RZ) is not None
    for v in B:
        assert linalg.span_coordinates(A, v, RZ) is not None


def test_lattice_quotient():
    # Z^2 / <(2, 0), (0, 3)> = Z/6
    assert linalg.lattice_quotient([[1, 0], [0, 1]], [[2, 0], [0, 3]], 2) == (0, (6,))
    assert linalg.lattice_quotient([[1, 0], [0, 1]], [[2, 0]], 2) == (1, (2,))


def test_quotient_over_zn():
    Z6 = Ring.parse("Zn:6")
    # (Z/6)^2 / <(2, 0)> = Z/2 + Z/6
    assert linalg.module_invariants_of_quotient([[1, 0], [0, 1]], [[2, 0]], 2, Z6) == (1, (2,))


def test_solve_over_z_respects_integrality():
    assert linalg.solve([[2]], [1], RZ) is None
    assert linalg.solve([[2]], [4], RZ) == [2]
    assert linalg.solve([[2]], [1], QQ) == [Fraction(1, 2)]
