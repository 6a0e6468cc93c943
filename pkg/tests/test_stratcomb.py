"""Subgroup combinatorics behind the gluing index of the stratification."""
import pytest

from cyclic_mackey.stratcomb import (FiniteGroup, GroupTooLarge, c_set, check_actions, cyclic_group,
                                     double_cosets, gluing_index, is_prime_power, parse_cycles,
                                     parse_group, parse_subgroup, quotient_structure,
                                     stratification_table, verify_group)


@pytest.mark.parametrize("name,order", [("C6", 6), ("S3", 6), ("A4", 12), ("D4", 8), ("S4", 24), ("C27", 27)])
def test_named_groups(name, order):
    assert parse_group(name).order == order


@pytest.mark.parametrize("name,count", [("S3", 6), ("A4", 10), ("D4", 10), ("S4", 30), ("C12", 6)])
def test_subgroup_counts(name, count):
    assert len(parse_group(name).subgroups) == count


@pytest.mark.parametrize("name", ["S3", "A4", "C27", "D4", "S4", "C12"])
def test_every_pair_verifies(name):
    G = parse_group(name)
    assert verify_group(G) == len(G.subgroups) ** 2


def test_normal_subgroup_of_index_three_has_empty_class():
    G = parse_group("A4")
    assert c_set(G, parse_subgroup(G, "(1,2,3)"), G.whole) == []


def test_transposition_in_s3_has_empty_class():
    G = parse_group("S3")
    assert c_set(G, parse_subgroup(G, "(1,2)"), G.whole) == []


def test_cyclic_groups_have_one_class():
    G = cyclic_group(12)
    for H in G.subgroups:
        for K in G.subgroups:
            if H <= K:
                assert len(c_set(G, H, K)) == G.order // len(K)
                assert len(double_cosets(G, H, K)) == 1


def test_a4_examples():
    G = parse_group("A4")
    C2 = parse_subgroup(G, "(1,2)(3,4)")
    V4 = parse_subgroup(G, "(1,2)(3,4); (1,3)(2,4)")
    assert len(V4) == 4
    [datum] = gluing_index(G, G.trivial, C2)
    assert datum.tate_quotient == "C2"
    [datum] = gluing_index(G, C2, V4)
    assert datum.tate_quotient == "C2" and not datum.vanishes_for_spectra
    [datum] = gluing_index(G, V4, G.whole)
    assert datum.tate_quotient == "C3" and datum.induction_order == 1
    [datum] = gluing_index(G, G.trivial, G.whole)
    assert datum.vanishes_for_spectra


def test_a4_table():
    G = parse_group("A4")
    table = {(len(H), len(K)): [d.tate_quotient for d in data] for H, K, data in stratification_table(G)}
    assert table[(1, 4)] == ["C2 x C2"]
    assert table[(2, 12)] == [] and table[(3, 12)] == []


def test_quotient_names():
    G = parse_group("S3")
    assert quotient_structure(G, G.whole, G.trivial) == "nonabelian of order 6"
    G = parse_group("C12")
    assert quotient_structure(G, G.whole, G.trivial) == "C12"


def test_actions_hold_for_d4():
    G = parse_group("D4")
    for H in G.subgroups:
        check_actions(G, H, G.trivial)


def test_prime_powers():
    assert [m for m in range(1, 17) if is_prime_power(m)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    # the trivial group has vanishing Tate construction, so 1 does not count


def test_parsing():
    assert parse_cycles("(1,2,3); (1,2)") == [(1, 2, 0), (1, 0, 2)]
    G = parse_group("(1,2,3,4); (1,3)")
    assert G.order == 8
    with pytest.raises(ValueError):
        parse_group("Q8")
    with pytest.raises(ValueError):
        parse_cycles("(1,1)")
    with pytest.raises(ValueError):
        parse_subgroup(parse_group("S3"), "(1,4)")


def test_order_bound():
    with pytest.raises(GroupTooLarge):
        parse_group("S6")
    with pytest.raises(GroupTooLarge):
        FiniteGroup([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], max_order=60)
