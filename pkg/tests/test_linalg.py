import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from effdim.errors import InconsistentSystemError
from effdim.fields import ExtField, PrimeField, Rationals
from effdim.linalg import (
    Matrix,
    block_diag,
    rank_of,
    rank_solve,
    smith_form,
    smith_form_with_transforms,
)

Q = Rationals()


def _mat(field, rows):
    return Matrix.from_int_rows(field, rows)


def test_matrix_basics():
    A = _mat(Q, [[1, 2], [3, 4]])
    B = _mat(Q, [[0, 1], [1, 0]])
    assert A.mul(B).data == _mat(Q, [[2, 1], [4, 3]]).data
    assert A.add(B).data == _mat(Q, [[1, 3], [4, 4]]).data
    assert A.sub(A).is_zero()
    assert A.transpose().data == _mat(Q, [[1, 3], [2, 4]]).data
    assert A.scalar_mul(Fraction(1, 2)).data[0] == [Fraction(1, 2), Fraction(1)]
    assert Matrix.identity(Q, 3).mul(Matrix.identity(Q, 3)) == Matrix.identity(Q, 3)
    assert A.pow(0) == Matrix.identity(Q, 2)
    assert A.pow(3) == A.mul(A).mul(A)


def test_matrix_shape_checks():
    A = _mat(Q, [[1, 2]])
    with pytest.raises(ValueError):
        A.mul(A)
    with pytest.raises(ValueError):
        A.add(_mat(Q, [[1], [2]]))


def test_kron():
    F = PrimeField(5)
    A = _mat(F, [[1, 2], [0, 1]])
    B = _mat(F, [[3]])
    K = A.kron(B)
    assert (K.rows, K.cols) == (2, 2)
    assert K.data == [[3, 1], [0, 3]]
    I2 = Matrix.identity(Q, 2)
    J = _mat(Q, [[0, 1], [0, 0]])
    K2 = I2.kron(J)
    assert K2.rows == 4 and K2.data[0][1] == Fraction(1) and K2.data[2][3] == Fraction(1)


def test_block_diag():
    A = _mat(Q, [[1]])
    B = _mat(Q, [[2, 0], [0, 3]])
    D = block_diag(Q, [A, B])
    assert (D.rows, D.cols) == (3, 3)
    assert [D.data[i][i] for i in range(3)] == [Fraction(1), Fraction(2), Fraction(3)]
    assert D.data[0][1] == Fraction(0)


def test_rank_identity_empty_kernel():
    F = PrimeField(2)
    rank, kernel, _ = rank_solve(Matrix.identity(F, 3))
    assert rank == 3 and kernel.cols == 0


def test_rank_all_ones():
    A = _mat(Q, [[1, 1], [1, 1]])
    rank, kernel, _ = rank_solve(A)
    assert rank == 1 and kernel.cols == 1
    assert A.mul(kernel).is_zero()
    # kernel spans (1, -1)
    v = [kernel.data[0][0], kernel.data[1][0]]
    assert v[0] == -v[1] != 0


def test_rank_mod_p_can_drop():
    # full rank over Q, rank 1 after reduction mod 2
    A = _mat(Q, [[1, 1], [1, 3]])
    assert rank_of(A) == 2
    assert rank_of(_mat(PrimeField(2), [[1, 1], [1, 3]])) == 1


def test_solve():
    A = _mat(Q, [[1, 2], [3, 4]])
    rhs = _mat(Q, [[5], [6]])
    rank, _, x = rank_solve(A, rhs)
    assert rank == 2
    assert A.mul(x) == rhs


def test_solve_inconsistent():
    A = _mat(Q, [[1, 1], [2, 2]])
    with pytest.raises(InconsistentSystemError):
        rank_solve(A, _mat(Q, [[0], [1]]))
    # consistent rhs on the same singular matrix works
    rank, kernel, x = rank_solve(A, _mat(Q, [[3], [6]]))
    assert rank == 1 and A.mul(x) == _mat(Q, [[3], [6]])
    assert A.mul(kernel).is_zero()


def test_rank_extension_field():
    F4 = ExtField(2, 2)
    x = (0, 1)
    A = Matrix(F4, [[F4.one, x], [x, F4.mul(x, x)]])  # second row = x * first
    assert rank_of(A) == 1


def test_rank_properties_random():
    rng = random.Random(5)
    for F in (Q, PrimeField(3), ExtField(2, 2)):
        for _ in range(25):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            ints = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
            A = Matrix.from_int_rows(F, ints)
            rank, kernel, _ = rank_solve(A)
            assert rank + kernel.cols == cols
            if kernel.cols:
                assert A.mul(kernel).is_zero()
            assert rank == rank_of(A.transpose())


def test_rank_mod_p_le_rank_q():
    rng = random.Random(17)
    for _ in range(30):
        ints = [[rng.randint(0, 1) for _ in range(4)] for _ in range(4)]
        rq = rank_of(Matrix.from_int_rows(Q, ints))
        for p in (2, 3):
            assert rank_of(Matrix.from_int_rows(PrimeField(p), ints)) <= rq


def test_matrix_json_roundtrip():
    for F in (Q, PrimeField(7), ExtField(2, 2)):
        A = Matrix.from_int_rows(F, [[1, -2, 3], [0, 5, -1]])
        back = Matrix.from_json(A.to_json())
        assert back.field == F and back.data == A.data
    obj = Matrix(Q, [[Fraction(1, 3)]]).to_json()
    assert obj["entries"] == [["1/3"]]


def test_smith_diagonal_cases():
    assert smith_form([[2, 0], [0, 4]]) == [2, 4]
    assert smith_form([[2, 0], [0, 3]]) == [6]
    assert smith_form([[1, 0], [0, 1]]) == []
    assert smith_form([[0]]) == [0]
    # presentation with a free generator: one relation on two generators
    assert smith_form([[2, 0]]) == [2, 0]


def test_smith_transforms_identity():
    A = [[6, 4], [4, 6]]
    diag, U, V = smith_form_with_transforms(A)
    n = len(A)
    prod = [
        [sum(U[i][k] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]
    prod = [
        [sum(prod[i][k] * V[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            assert prod[i][j] == (diag[i] if i == j else 0)
    assert diag == [2, 10]  # det 20, gcd 2


def test_smith_against_sympy():
    rng = random.Random(23)
    for _ in range(20):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        A = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        diag, U, V = smith_form_with_transforms(A)
        # transforms are unimodular
        assert abs(sympy.Matrix(U).det()) == 1
        assert abs(sympy.Matrix(V).det()) == 1
        # UAV is the diagonal we report
        got = sympy.Matrix(U) * sympy.Matrix(A) * sympy.Matrix(V)
        for i in range(rows):
            for j in range(cols):
                assert got[i, j] == (diag[i] if i == j and i < len(diag) else 0)
        # divisibility chain, positive pivots
        run = [d for d in diag if d]
        for a, b in zip(run, run[1:]):
            assert a > 0 and b % a == 0
        want = smith_normal_form(sympy.Matrix(A))
        for i in range(min(rows, cols)):
            assert abs(want[i, i]) == (diag[i] if i < len(diag) else 0)


def test_smith_form_invariant_factors():
    # Z^2 / <(2, 2), (0, 4)> = Z/2 + Z/4
    assert smith_form([[2, 2], [0, 4]]) == [2, 4]
    # no relations at all: free of rank 2... represented by a 1x2 zero row
    assert smith_form([[0, 0]]) == [0, 0]
