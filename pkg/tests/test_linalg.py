"""Exact integer linear algebra, checked against sympy and determinantal divisors."""
from itertools import combinations
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from cyclic_mackey.linalg import (identity, kernel_basis, matmul, quotient_invariants,
                                  smith_normal_form, solve_integer, zeros, zmat)


def small_matrices(max_dim=5, bound=12):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def sympy_factors(rows):
    fac = invariant_factors(Matrix(rows), domain=ZZ)
    return sorted(int(abs(d)) for d in fac if d != 0)


def determinantal_factors(rows):
    """d_k = D_k / D_{k-1} with D_k the gcd of all k x k minors."""
    M = Matrix(rows)
    m, n = M.shape
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in combinations(range(m), k):
            for c in combinations(range(n), k):
                g = gcd(g, int(M.extract(list(r), list(c)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def nonzero_diagonal(a):
    return [d for d in smith_normal_form(zmat(a)).diagonal if d != 0]


@given(small_matrices())
def test_invariant_factors_match_sympy(rows):
    assert nonzero_diagonal(rows) == sympy_factors(rows)


@given(small_matrices(max_dim=4, bound=6))
def test_invariant_factors_match_determinantal_divisors(rows):
    assert nonzero_diagonal(rows) == determinantal_factors(rows)


@given(small_matrices())
def test_transforms_are_inverse_and_diagonalize(rows):
    a = zmat(rows)
    m, n = a.shape
    sf = smith_normal_form(a)
    assert np.array_equal(matmul(sf.left, sf.left_inv), identity(m))
    assert np.array_equal(matmul(sf.right, sf.right_inv), identity(n))
    d = matmul(matmul(sf.left, a), sf.right)
    expected = zeros(m, n)
    for i, x in enumerate(sf.diagonal):
        expected[i, i] = x
    assert np.array_equal(d, expected)
    nz = [x for x in sf.diagonal if x]
    assert all(x > 0 for x in nz)
    assert all(b % a_ == 0 for a_, b in zip(nz, nz[1:]))
    assert all(x == 0 for x in sf.diagonal[len(nz):])


@given(small_matrices())
def test_kernel_basis_is_saturated(rows):
    a = zmat(rows)
    K, Kinv = kernel_basis(a)
    assert K.shape[1] == a.shape[1] - Matrix(rows).rank()
    assert not matmul(a, K).any()
    assert np.array_equal(matmul(Kinv, K), identity(K.shape[1]))


@given(small_matrices(), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_solve_integer_finds_preimages(rows, coeffs):
    a = zmat(rows)
    x = zmat([[c] for c in coeffs[: a.shape[1]]])
    b = matmul(a, x)
    y = solve_integer(a, b)
    assert y is not None
    assert np.array_equal(matmul(a, y), b)


def test_solve_integer_rejects_non_integral():
    assert solve_integer(zmat([[2]]), zmat([[1]])) is None
    assert solve_integer(zmat([[0], [0]]), zmat([[0], [1]])) is None


def test_quotient_invariants():
    # Z^3 / <(2,0,0), (0,6,0)> = Z/2 + Z/6 + Z
    assert quotient_invariants(zmat([[2, 0], [0, 6], [0, 0]]), 3) == (1, (2, 6))
    assert quotient_invariants(zeros(2, 0), 2) == (2, ())
    # Z/4 + Z/6 has invariant factors 2, 12
    assert quotient_invariants(zmat([[4, 0], [0, 6]]), 2) == (0, (2, 12))


def test_big_integers_stay_exact():
    big = 2 ** 70 + 3
    a = zmat([[big, 1], [0, big]])
    assert matmul(a, a)[0, 0] == big * big
    assert nonzero_diagonal([[big, 0], [0, 2 * big]]) == [big, 2 * big]


def test_matmul_with_empty_inner_dimension():
    assert matmul(zeros(3, 0), zeros(0, 2)).shape == (3, 2)


@pytest.mark.parametrize("rows", [[[0]], [[0, 0], [0, 0]], [[1]]])
def test_degenerate_shapes(rows):
    assert nonzero_diagonal(rows) == sympy_factors(rows)
