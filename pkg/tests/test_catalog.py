"""The explicit complexes, their maps and the transfer nullhomotopy."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_mackey.catalog import (CatalogId, Cc, Chat, Sc, Tc, Zc, build_complex, cone_dictionary,
                                   gen_norm, homotopy_h, homotopy_h_orbits, inc_map, map_c, map_e,
                                   map_g, map_i, map_k, map_q, trf_map, _scalar_map)
from cyclic_mackey.complexes import (ChainComplexError, FinGenAb, compose, cone, cp_fixedpoints,
                                     homology_at, induced_on_homology)
from cyclic_mackey.groupring import GroupRingMatrix

PR = [(3, 1), (3, 2), (5, 1)]


def cyc(d):
    return FinGenAb(0, (d,)) if d > 1 else FinGenAb()


@pytest.mark.parametrize("p,r", PR + [(3, 0)])
@pytest.mark.parametrize("i", [0, 1])
def test_tate_complex_underlying_homology(p, r, i):
    X = Tc(i, p, r)
    for k in range(-6, 7):
        assert homology_at(X, k) == (cyc(p ** (i + 1)) if k % 2 == 0 else FinGenAb())


@pytest.mark.parametrize("p,r", PR)
def test_orbit_complex_homology(p, r):
    # _0S_r resolves Z as a C_{p^r}-module; its underlying homology is Z in degree 0
    X = Sc(0, p, r)
    assert homology_at(X, 0) == FinGenAb(1)
    for k in range(1, 7):
        assert homology_at(X, k).is_zero()


@pytest.mark.parametrize("p,r", PR + [(5, 0)])
def test_chat_has_the_homology_of_c0(p, r):
    for k in range(-5, 8):
        assert homology_at(Chat(p, r), k) == homology_at(Cc(0, p, r), k)


@pytest.mark.parametrize("p,r", PR)
def test_k_is_a_quasi_isomorphism(p, r):
    k = map_k(p, r)
    for n in range(-5, 8):
        f = induced_on_homology(k, n)
        assert f.invariants() == (FinGenAb(), f.source, FinGenAb())


@pytest.mark.parametrize("p,r", PR)
def test_structure_maps_are_chain_maps(p, r):
    maps = [map_q(1, p, r), map_q(2, p, r), map_e(0, p, r), map_e(1, p, r), map_g(0, p, r),
            map_c(0, p, r, 1), map_c(1, p, r, -2), gen_norm(p, r), map_i(p, r),
            cone_dictionary(p, r), map_k(p, r)]
    for f in maps:
        for n in range(-6, 8):
            f.check(n)


@given(st.sampled_from(PR), st.integers(-12, 14))
def test_nullhomotopy_identity(pr, n):
    p, r = pr
    homotopy_h(p, r).check(n)
    homotopy_h_orbits(p, r).check(n)


def test_displayed_norm_scaling_breaks_the_dictionary():
    """With components p^{floor(m/2)} the cone of i o genNm is not C^0: d_1 would be N, not pN."""
    p, r = 3, 1
    displayed = _scalar_map(Sc(1, p, r), Sc(0, p, r), lambda m: p ** (m // 2), "displayed")
    K = cone(compose(map_i(p, r), displayed))
    ident = _scalar_map(K, Cc(0, p, r), lambda n: 1, "dict")
    with pytest.raises(ChainComplexError):
        for n in range(-2, 4):
            ident.check(n)


@pytest.mark.parametrize("p,r", PR)
@pytest.mark.parametrize("build,i", [(Zc, 0), (Zc, 2), (Cc, 0), (Cc, 1), (Tc, 0), (Sc, 0)])
def test_fixed_points_match_the_raised_complex(p, r, build, i):
    X, Y = build(i, p, r), build(i + 1, p, r - 1)
    F = cp_fixedpoints(X)
    for n in range(-6, 8):
        assert F.rank(n) == Y.rank(n)
        assert F.diff(n) == Y.diff(n)


@pytest.mark.parametrize("p,r", PR)
def test_transfer_after_inclusion_is_p(p, r):
    X, Y = Cc(0, p, r), Cc(1, p, r - 1)
    both = compose(trf_map(X, Y), inc_map(X, Y))
    for n in range(-6, 8):
        assert both.comp(n) == GroupRingMatrix.identity(both.ctx, both.target.rank(n), p)


def test_catalog_ids_and_memoization():
    assert build_complex(CatalogId("T", 1, 3, 2)) is Tc(1, 3, 2)
    assert Chat(3, 1) is Chat(3, 1)
    with pytest.raises(ValueError):
        CatalogId("X", 0, 3, 1)
    with pytest.raises(ValueError):
        CatalogId("C", -1, 3, 1)
    with pytest.raises(ValueError):
        map_q(0, 3, 1)
    with pytest.raises(ValueError):
        homotopy_h(3, 0)


def test_support_bounds():
    assert Zc(1, 3, 1).rank(1) == 0 and Zc(1, 3, 1).rank(0) == 1
    assert Sc(0, 3, 1).rank(-1) == 0 and Sc(0, 3, 1).rank(0) == 1
    assert Cc(0, 3, 1).rank(-50) == 1 and Cc(0, 3, 1).rank(50) == 1
