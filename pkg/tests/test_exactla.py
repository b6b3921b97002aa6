"""Exact linear algebra: contract examples, oracles, and invariants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtilt.exactla import (Matrix, PrimeField, QQ, block_diag, hstack,
                           kernel_basis, kernel_matrix, kron, rref, solve,
                           vstack)
from qtilt.errors import FieldMismatchError, ShapeMismatchError


# --- independent oracle: Bareiss fraction-free elimination rank -------------

def bareiss_rank(rows):
    """Rank via one-step fraction-free Gaussian elimination on integers."""
    A = [[Fraction(x).numerator * 1 for x in row] for row in rows]
    # clear denominators row by row so the input may be rational
    for i, row in enumerate(rows):
        den = 1
        for x in row:
            f = Fraction(x)
            den = den * f.denominator // __import__("math").gcd(den, f.denominator)
        A[i] = [int(Fraction(x) * den) for x in row]
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if A[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[r][c] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        rank += 1
    return rank


def mat(rows, field=QQ):
    return Matrix(field, rows)


def rand_matrix(rnd, m, n, lo=-4, hi=4):
    return mat([[Fraction(rnd.randint(lo, hi), rnd.choice([1, 1, 2, 3]))
                 for _ in range(n)] for _ in range(m)])


# --- rref --------------------------------------------------------------------

def test_rref_identity():
    m = Matrix.identity(QQ, 2)
    res = rref(m)
    assert res.matrix == m
    assert res.pivots == (0, 1)
    assert res.rank == 2


def test_rref_proportional_rows():
    res = rref(mat([[1, 1], [2, 2]]))
    assert res.matrix == mat([[1, 1], [0, 0]])
    assert res.rank == 1


def test_rref_rank_matches_bareiss_oracle():
    import random
    rnd = random.Random(7)
    for trial in range(25):
        rows = [[Fraction(rnd.randint(-5, 5), rnd.choice([1, 2]))
                 for _ in range(7)] for _ in range(5)]
        assert rref(mat(rows)).rank == bareiss_rank(rows)


def test_rref_idempotent():
    import random
    rnd = random.Random(3)
    for trial in range(10):
        m = rand_matrix(rnd, 4, 6)
        r1 = rref(m).matrix
        assert rref(r1).matrix == r1


def test_rref_prime_field():
    f5 = PrimeField(5)
    m = Matrix(f5, [[2, 4], [1, 2]])
    res = rref(m)
    assert res.rank == 1
    assert res.matrix.rows[0] == (1, 2)


def test_field_mismatch_rejected():
    with pytest.raises(FieldMismatchError):
        mat([[1]]) * Matrix(PrimeField(3), [[1]])


# --- kernel ------------------------------------------------------------------

def test_kernel_of_identity_empty():
    assert kernel_basis(Matrix.identity(QQ, 3)) == []


def test_kernel_single_relation():
    basis = kernel_basis(mat([[1, 1]]))
    assert len(basis) == 1
    assert basis[0] == (1, -1)


def test_kernel_rank_nullity_and_annihilation():
    import random
    rnd = random.Random(11)
    for trial in range(20):
        m = rand_matrix(rnd, rnd.randint(1, 5), rnd.randint(1, 7))
        basis = kernel_basis(m)
        assert m.rank() + len(basis) == m.ncols
        for v in basis:
            prod = m * Matrix.from_cols(QQ, [v], nrows=m.ncols)
            assert prod.is_zero()


def test_kernel_zero_columns():
    m = Matrix(QQ, [], ncols=4)
    assert m.nrows == 0
    assert len(kernel_basis(m)) == 4


# --- solve -------------------------------------------------------------------

def test_solve_identity():
    b = mat([[2], [3]])
    assert solve(Matrix.identity(QQ, 2), b) == b


def test_solve_underdetermined_residual():
    a = mat([[1, 1]])
    b = mat([[2]])
    x = solve(a, b)
    assert x is not None
    assert (a * x) == b


def test_solve_random_consistent():
    import random
    rnd = random.Random(13)
    for trial in range(15):
        a = rand_matrix(rnd, 4, 3)
        x0 = rand_matrix(rnd, 3, 2)
        b = a * x0
        x = solve(a, b)
        assert x is not None
        assert (a * x - b).is_zero()


def test_solve_inconsistent():
    a = mat([[1], [1]])
    b = mat([[0], [1]])
    assert solve(a, b) is None


def test_solve_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        solve(mat([[1]]), mat([[1], [2]]))


# --- kron --------------------------------------------------------------------

def test_kron_identities():
    assert kron(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)


def test_kron_scalar():
    b = mat([[1, 2], [3, 4]])
    assert kron(mat([[2]]), b) == b.scale(2)


def test_kron_rank_multiplicative():
    import random
    rnd = random.Random(17)
    for trial in range(10):
        a = rand_matrix(rnd, 3, 3, -2, 2)
        b = rand_matrix(rnd, 3, 3, -2, 2)
        assert kron(a, b).rank() == a.rank() * b.rank()


def test_kron_mixed_product():
    import random
    rnd = random.Random(19)
    a1, a2 = rand_matrix(rnd, 2, 3), rand_matrix(rnd, 3, 2)
    b1, b2 = rand_matrix(rnd, 2, 2), rand_matrix(rnd, 2, 3)
    assert kron(a1 * a2, b1 * b2) == kron(a1, b1) * kron(a2, b2)


def test_kron_entry_layout():
    a = mat([[0, 1], [2, 0]])
    b = mat([[5, 6], [7, 8]])
    k = kron(a, b)
    for i in range(2):
        for j in range(2):
            for l in range(2):
                for t in range(2):
                    assert k[(i * 2 + l, j * 2 + t)] == a[(i, j)] * b[(l, t)]


# --- hypothesis property tests ----------------------------------------------

small_entries = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_dim=4):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small_entries, min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return mat(rows)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_prop_rank_nullity(m):
    assert rref(m).rank + len(kernel_basis(m)) == m.ncols


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_prop_rref_idempotent(m):
    r = rref(m).matrix
    assert rref(r).matrix == r


@settings(max_examples=30, deadline=None)
@given(matrices(max_dim=3), matrices(max_dim=3))
def test_prop_kron_bilinear_in_first(a, b):
    two_a = a.scale(2)
    assert kron(two_a, b) == kron(a, b).scale(2)


# --- block helpers ------------------------------------------------------------

def test_stacking_and_blocks():
    a = mat([[1, 2]])
    b = mat([[3, 4]])
    assert hstack([a, b]) == mat([[1, 2, 3, 4]])
    assert vstack([a, b]) == mat([[1, 2], [3, 4]])
    d = block_diag(QQ, [mat([[1]]), mat([[2, 0], [0, 3]])])
    assert d == mat([[1, 0, 0], [0, 2, 0], [0, 0, 3]])


def test_empty_shapes():
    z = Matrix.zeros(QQ, 0, 3)
    assert z.transpose().nrows == 3 and z.transpose().ncols == 0
    z2 = Matrix.zeros(QQ, 3, 0)
    assert (z2 * Matrix.zeros(QQ, 0, 2)).nrows == 3
    assert rref(z2).rank == 0


def test_prime_field_kernel_and_solve():
    f7 = PrimeField(7)
    m = Matrix(f7, [[1, 2, 3], [2, 4, 6]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert (m * Matrix.from_cols(f7, [v], nrows=3)).is_zero()
    b = Matrix(f7, [[5], [3]])
    x = solve(Matrix(f7, [[1, 0], [0, 2]]), b)
    assert x is not None
    assert x.rows[1][0] == (3 * pow(2, 5, 7)) % 7


def test_dense_axpy_product_path_with_fractions():
    # wide, dense product routed through the vectorized row updates
    from fractions import Fraction as F
    import random
    rnd = random.Random(2)
    a = Matrix(QQ, [[F(rnd.randint(-3, 3), rnd.choice([1, 2]))
                     for _ in range(60)] for _ in range(4)])
    b = Matrix(QQ, [[F(rnd.randint(-3, 3), rnd.choice([1, 2]))
                     for _ in range(64)] for _ in range(60)])
    slow_rows = []
    for i in range(4):
        row = []
        for j in range(64):
            row.append(sum(a[(i, k)] * b[(k, j)] for k in range(60)))
        slow_rows.append(row)
    assert (a * b) == Matrix(QQ, slow_rows)
