"""Picard coordinates and the map from virtual representations."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_mackey.complexes import FinGenAb
from cyclic_mackey.picard import (MonoidElt, OddPrimeRequired, PicCoord, VirtualRep, format_pic,
                                  parse_pic, parse_rep, pic_add, pic_equal, pic_neg, pic_structure,
                                  reduce_to_P, rep_to_pic, vp_split)

GROUPS = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]


def virtual_reps(p, n):
    js = st.integers(1, p ** n - 1)
    return st.builds(lambda t, terms: VirtualRep(p, n, t, tuple(terms)),
                     st.integers(-3, 3), st.lists(st.tuples(js, st.integers(-3, 3)), max_size=4))


def coords(p, n):
    def build(beta, gamma):
        return PicCoord(p, n, tuple(beta), tuple(gamma))
    units = [st.integers(1, p ** (n - s + 1) - 1).filter(lambda g: g % p) for s in range(1, n + 1)]
    return st.builds(build, st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1),
                     st.tuples(*units))


group_and_reps = st.sampled_from(GROUPS).flatmap(
    lambda g: st.tuples(st.just(g), virtual_reps(*g), virtual_reps(*g)))


def test_structure_examples():
    text, group = pic_structure(3, 1)
    assert text == "Z^2 ⊕ (Z/3)^×/{±1} ≅ Z^2"
    assert group == FinGenAb(2, ())
    # (Z/25)^x/{+-1} is cyclic of order 10 and (Z/5)^x/{+-1} cyclic of order 2
    assert pic_structure(5, 2)[1] == FinGenAb(3, (2, 10))
    assert pic_structure(7, 1)[1] == FinGenAb(2, (3,))
    with pytest.raises(OddPrimeRequired):
        pic_structure(2, 1)


def test_rep_to_pic_examples():
    assert format_pic(rep_to_pic(parse_rep("rho(3)*1", 3, 2))) == "2,0,-1;1,1"
    assert format_pic(rep_to_pic(parse_rep("triv", 3, 1))) == "1,0;1"
    assert format_pic(rep_to_pic(parse_rep("rho(2)", 5, 1))) == "2,-1;2"


@given(group_and_reps)
def test_rep_to_pic_is_additive(data):
    (p, n), V, W = data
    assert rep_to_pic(V + W) == pic_add(rep_to_pic(V), rep_to_pic(W))


@given(st.sampled_from(GROUPS).flatmap(lambda g: st.tuples(st.just(g), st.integers(1, g[0] ** g[1] - 1))))
def test_conjugate_characters_give_the_same_element(data):
    (p, n), j = data
    a = rep_to_pic(VirtualRep(p, n, 0, ((j, 1),)))
    b = rep_to_pic(VirtualRep(p, n, 0, ((p ** n - j, 1),)))
    assert pic_equal(a, b)


@given(st.sampled_from(GROUPS).flatmap(lambda g: coords(*g)))
def test_group_laws(c):
    unit = PicCoord.unit(c.p, c.n)
    assert pic_add(c, pic_neg(c)) == unit
    assert pic_add(c, unit) == c
    assert parse_pic(format_pic(c), c.p, c.n) == c
    assert pic_equal(c, reduce_to_P(c))


def test_beta_partial_sums():
    c = PicCoord(3, 2, (1, 2, -1), (1, 1))
    assert [c.beta_le(i) for i in range(3)] == [1, 5, 3]


def test_validation():
    with pytest.raises(ValueError):
        PicCoord(3, 1, (0, 0), (3,))
    with pytest.raises(ValueError):
        PicCoord(3, 2, (0, 0), (1, 1))
    with pytest.raises(OddPrimeRequired):
        PicCoord(2, 1, (0, 0), (1,))
    with pytest.raises(ValueError):
        parse_rep("rho(9)", 3, 2)
    with pytest.raises(ValueError):
        parse_rep("sigma(1)", 3, 2)


def test_parse_rep_grammar():
    V = parse_rep("triv*2, rho(1)*-1, rho(3)", 3, 2)
    assert V.m_triv == 2 and dict(V.m) == {1: -1, 3: 1}
    assert not V.is_actual()
    assert parse_rep("0", 3, 2) == VirtualRep(3, 2)
    assert parse_rep("rho(1), rho(1)", 3, 2).m == ((1, 2),)


def test_vp_split():
    assert vp_split(6, 3, 2) == (1, 2)
    assert vp_split(1, 5, 2) == (0, 1)
    assert vp_split(10, 5, 2) == (1, 2)


def test_monoid_invertibility():
    m = MonoidElt(3, 1, (0, 2), (2,))
    assert m.is_invertible()
    odd = MonoidElt(3, 1, (1, 1), (0,))
    assert not odd.is_invertible()
    assert not (odd + m).is_invertible()
    assert (m + m).is_invertible()
    with pytest.raises(ValueError):
        MonoidElt(3, 1, (0, 1), (1,))
