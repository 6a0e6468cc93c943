"""Orbit-space oracle: cellular chains of representation spheres and their quotients."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_mackey.bredon import (fixed_dimension, oracle_inclusion, oracle_table, orbit_cohomology,
                                  rep_sphere_chains, smash, _sphere_of_line)
from cyclic_mackey.complexes import FinGenAb, homology_at
from cyclic_mackey.picard import parse_rep

Z, ZERO = FinGenAb(1), FinGenAb()


def reps(p, n):
    rho = st.tuples(st.integers(1, p ** n - 1), st.integers(0, 1))
    return st.builds(lambda t, rs: parse_rep(", ".join([f"triv*{t}"] + [f"rho({j})*{m}" for j, m in rs if m])
                                             if t or any(m for _, m in rs) else "triv*0", p, n),
                     st.integers(0, 1), st.lists(rho, max_size=2))


def _sphere_homology(C, dim, lo=-1, hi=8):
    for k in range(lo, hi):
        assert homology_at(C, k) == (Z if k == dim else ZERO), k


@settings(max_examples=15)
@given(reps(3, 2))
def test_underlying_space_is_a_sphere(V):
    X = rep_sphere_chains(3, 2, V)
    X.check_equivariant()
    _sphere_homology(X.underlying(), V.dim)


@settings(max_examples=15)
@given(reps(3, 2), st.integers(0, 2))
def test_fixed_points_are_spheres(V, a):
    X = rep_sphere_chains(3, 2, V)
    _sphere_homology(X.fixed_subcomplex(a), fixed_dimension(V, a))


def test_trivial_representation():
    V = parse_rep("triv", 3, 1)
    for a in range(2):
        assert orbit_cohomology(3, 1, a, V, 1) == Z
        assert orbit_cohomology(3, 1, a, V, 0) == ZERO


def test_zero_representation_is_the_zero_sphere():
    V = parse_rep("triv*0", 5, 1)
    assert orbit_cohomology(5, 1, 1, V, 0) == Z
    assert oracle_inclusion(5, 1, 0, V, 0).tolist() == [[1]]


def test_rotation_quotient_is_a_sphere():
    # S^rho_1 / C_3 is again a 2-sphere; the quotient map has degree 3
    V = parse_rep("rho(1)", 3, 1)
    assert orbit_cohomology(3, 1, 1, V, 2) == Z
    assert orbit_cohomology(3, 1, 1, V, 1) == ZERO
    assert oracle_inclusion(3, 1, 0, V, 2).tolist() in ([[3]], [[-3]])


def test_kernel_of_a_line_acts_trivially():
    # rho_3 of C_9 has kernel C_3, so quotienting by C_3 changes nothing
    V = parse_rep("rho(3)", 3, 2)
    X = _sphere_of_line(3, 2, 3)
    assert X.rank(1) == 3 and set(X.stab[1]) == {1}
    assert orbit_cohomology(3, 2, 1, V, 2) == Z
    assert oracle_inclusion(3, 2, 0, V, 2).tolist() == [[1]]


def test_double_rotation_torsion():
    table = oracle_table(3, 2, parse_rep("rho(1)*2", 3, 2), (0, 5))
    assert table[(2, 3)] == FinGenAb(0, (9,))
    assert table[(1, 3)] == FinGenAb(0, (3,))
    assert table[(0, 4)] == Z


def test_smash_is_koszul_signed():
    a = _sphere_of_line(3, 1, 1)
    X = smash(a, a)
    X.check_equivariant()
    assert X.top == 4 and X.rank(4) == 9


def test_rejections():
    with pytest.raises(ValueError):
        rep_sphere_chains(3, 1, parse_rep("rho(1)*-1", 3, 1))
    with pytest.raises(ValueError):
        orbit_cohomology(3, 1, 2, parse_rep("triv", 3, 1), 0)
    with pytest.raises(ValueError):
        oracle_inclusion(3, 1, 1, parse_rep("triv", 3, 1), 0)
    with pytest.raises(ValueError):
        smash(_sphere_of_line(3, 1, 1), _sphere_of_line(5, 1, 1))
