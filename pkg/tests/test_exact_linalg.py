from fractions import Fraction
from itertools import permutations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from pbwlength.exact_linalg import (
    EchelonBasis, FieldError, FieldSpec, SquareMatrix, char_poly, is_prime, mat_mul, poly_eval_matrix,
)

from conftest import F5, Q, mat


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1) ** inv
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def char_poly_oracle(int_rows):
    """Interpolate det(x I - A) through x = 0..n, over Q."""
    n = len(int_rows)
    xs = list(range(n + 1))
    ys = [leibniz_det([[Fraction(x if i == j else 0) - int_rows[i][j] for j in range(n)]
                       for i in range(n)]) for x in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d in range(n + 1):
            coeffs[d] += ys[i] * basis[d] / denom
    return coeffs


def test_is_prime_small_and_large():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_field_validation():
    with pytest.raises(FieldError):
        FieldSpec.prime(4)
    with pytest.raises(FieldError):
        FieldSpec("complex")
    assert F5.parse("7") == 2
    assert F5.parse("1/2") == 3
    assert Q.parse("-6/4") == Fraction(-3, 2)
    with pytest.raises(FieldError):
        Q.parse("1/0")
    with pytest.raises(FieldError):
        F5.parse("1/5")
    with pytest.raises(FieldError):
        Q.parse(1.5)


def test_identity_product():
    a = mat([[1, 2], [3, 4]])
    assert SquareMatrix.identity(2, Q) @ a == a
    assert a @ SquareMatrix.identity(2, Q) == a


def test_unit_product():
    e12 = mat([[0, 1], [0, 0]])
    e21 = mat([[0, 0], [1, 0]])
    assert mat_mul(e12, e21) == mat([[1, 0], [0, 0]])


def test_quantum_plane_commutation():
    q = 4
    x = mat([[1, 0], [0, q]], F5)
    y = mat([[0, 1], [1, 0]], F5)
    assert x @ y == (y @ x).scale(q)


def test_mat_mul_mismatch():
    with pytest.raises(FieldError):
        mat([[1, 0], [0, 1]]) @ mat([[1, 0], [0, 1]], F5)
    with pytest.raises(FieldError):
        mat([[1, 0], [0, 1]]) @ SquareMatrix.identity(3, Q)


def test_char_poly_examples():
    assert char_poly(mat([[1, 0], [0, 2]])) == [2, -3, 1]
    assert char_poly(mat([[0, 1], [0, 0]])) == [0, 0, 1]
    companion = [[0, 0, 1], [1, 0, 1], [0, 1, 0]]  # x^3 - x - 1
    assert char_poly_oracle(companion) == [-1, -1, 0, 1]
    assert char_poly(mat(companion)) == [-1, -1, 0, 1]


def test_char_poly_small_prime():
    # p = 2 <= n: a method that divides by 1..n would fail here
    f2 = FieldSpec.prime(2)
    a = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    want = [c.numerator * pow(c.denominator, -1, 2) % 2 for c in char_poly_oracle(a)]
    assert char_poly(mat(a, f2)) == want


int_matrices = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_char_poly_matches_interpolation(rows):
    assert char_poly(mat(rows)) == char_poly_oracle(rows)


@settings(max_examples=60, deadline=None)
@given(int_matrices, st.sampled_from([2, 3, 5, 7]))
def test_cayley_hamilton(rows, p):
    for field in (Q, FieldSpec.prime(p)):
        a = mat(rows, field)
        assert poly_eval_matrix(char_poly(a), a).is_zero()


def test_insert_examples():
    b = EchelonBasis(4, Q)
    ident = SquareMatrix.identity(2, Q)
    assert b.insert(ident, ()).grew and b.rank == 1
    res = b.insert(ident.scale(2), ("x",))
    assert res.member and res.coefficients == (2,) and b.rank == 1

    b = EchelonBasis(4, Q)
    b.insert(ident, ())
    b.insert(mat([[0, 0], [0, 1]]), (2,))
    res = b.insert(mat([[1, 0], [0, 0]]), (1,))
    assert res.member and res.coefficients == (1, -1)


def test_membership_examples():
    b = EchelonBasis(4, Q)
    b.insert(SquareMatrix.identity(2, Q))
    zero = b.membership(SquareMatrix.zeros(2, Q))
    assert zero.member and zero.coefficients == (0,)
    out = b.membership(mat([[0, 1], [0, 0]]))
    assert not out.member and any(out.residual)


def test_membership_quantum_plane_q_minus_one():
    f3 = FieldSpec.prime(3)
    q = 2  # -1 mod 3
    x = mat([[1, 0], [0, q]], f3)
    y = mat([[0, 1], [1, 0]], f3)
    b = EchelonBasis(4, f3)
    for m, tag in ((SquareMatrix.identity(2, f3), ()), (x, (2,)), (y, (1,)), (y @ x, (1, 2))):
        assert b.insert(m, tag).grew
    res = b.membership(x @ y)
    assert res.member and res.coefficients == (0, 0, 0, q)


def test_membership_field_mismatch():
    b = EchelonBasis(4, Q)
    with pytest.raises(FieldError):
        b.membership(SquareMatrix.identity(2, F5))


def test_rref_shape():
    b = EchelonBasis(4, Q)
    for rows in ([[1, 2], [3, 4]], [[0, 1], [1, 0]], [[2, 0], [0, 5]]):
        b.insert(mat(rows))
    assert b.pivots == sorted(b.pivots) and len(set(b.pivots)) == len(b.pivots)
    for r, p in zip(b.rows, b.pivots):
        assert r[p] == 1
        assert all(other[p] == 0 for other in b.rows if other is not r)


vectors = st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=8)


@settings(max_examples=80, deadline=None)
@given(vectors, st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_insert_agrees_with_membership(vs, probe):
    b = EchelonBasis(4, F5)
    last = 0
    for i, v in enumerate(vs):
        b.insert(v, (i,))
        assert last <= b.rank <= 4
        last = b.rank
    before = b.copy()
    m = b.membership(probe)
    assert b.rows == before.rows and b.tags == before.tags
    ins = b.insert(probe, ("probe",))
    assert m.member == ins.member
    if m.member:
        assert m.coefficients == ins.coefficients
        # coefficients reproduce the probe from the inserted vectors
        chosen = []
        replay = EchelonBasis(4, F5)
        for v in vs:
            if replay.insert(v).grew:
                chosen.append(v)
        recon = [0] * 4
        for c, v in zip(m.coefficients, chosen):
            recon = [(a + c * x) % 5 for a, x in zip(recon, v)]
        assert recon == [x % 5 for x in probe]


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_rational_normal_form(a, b, c, d):
    x = Q.reduce(Fraction(a, b)) * Q.reduce(Fraction(c, d)) + Q.reduce(Fraction(a, d))
    assert x.denominator > 0
    assert gcd(abs(x.numerator), x.denominator) == 1
