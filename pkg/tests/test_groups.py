from itertools import combinations

import numpy as np
import pytest

from lagrange_weyl.groups import (Character, InputError, character_eval, enumerate_subgroups,
                                  generated_subgroup, parse_group_spec, quotient)
from lagrange_weyl.torus import TorusExponent


def _brute_subgroups(group, order=None):
    """Closures of all generator subsets of size <= 2 (enough for rank <= 2) or all subsets for tiny groups."""
    elems = group.elements
    found = set()
    max_gens = len(group.orders) + 1
    for r in range(0, max_gens + 1):
        for gens in combinations(elems, r):
            H = generated_subgroup(group, gens)
            if order is None or H.order == order:
                found.add(H.indices)
    return found


@pytest.mark.parametrize("spec,expected", [("2x2", 5), ("3x3", 6), ("4", 3), ("2x4", 8), ("4x4", 15),
                                           ("2x2x2", 16), ("6", 4)])
def test_subgroup_counts(spec, expected):
    G = parse_group_spec(spec)
    subs = enumerate_subgroups(G)
    assert len(subs) == expected
    assert {H.indices for H in subs} == _brute_subgroups(G)


def test_subgroups_of_rank_four():
    # subgroup count of (Z_2)^4 is 1 + 15 + 35 + 15 + 1
    assert len(enumerate_subgroups(parse_group_spec("2x2x2x2"))) == 67


def test_subgroups_of_xi_z2_squared_closed():
    G = parse_group_spec("2x2x2x2")
    add = G.add_table
    for H in enumerate_subgroups(G):
        idx = sorted(H.indices)
        assert set(add[np.ix_(idx, idx)].ravel()) == set(idx)


def test_order_filter():
    G = parse_group_spec("3x3")
    assert len(enumerate_subgroups(G, 3)) == 4
    assert [sorted(H.indices) for H in enumerate_subgroups(G, 1)] == [[0]]
    with pytest.raises(InputError):
        enumerate_subgroups(G, 2)


def test_generated_subgroup_examples():
    G = parse_group_spec("2x2")
    assert sorted(generated_subgroup(G, [(1, 1)]).elements) == [(0, 0), (1, 1)]
    assert generated_subgroup(G, []).elements == ((0, 0),) or sorted(generated_subgroup(G, []).elements) == [(0, 0)]
    assert generated_subgroup(G, [(1, 0), (0, 1)]).order == 4
    with pytest.raises(InputError):
        generated_subgroup(G, [(2, 0)])


@pytest.mark.parametrize("spec", ["", "0", "2x", "ax2", "-3", "2x0"])
def test_parse_errors(spec):
    with pytest.raises(InputError):
        parse_group_spec(spec)


def test_parse_error_reports_position():
    with pytest.raises(InputError, match="position 2"):
        parse_group_spec("2xq")


def test_parse_forms():
    assert parse_group_spec("2x2").orders == (2, 2)
    assert parse_group_spec([4, 2]).orders == (4, 2)
    assert parse_group_spec("6").exponent == 6
    assert parse_group_spec("4x6").exponent == 12


def test_element_indexing_roundtrip():
    G = parse_group_spec("3x4")
    for i, x in enumerate(G.elements):
        assert G.index(x) == i
        assert G.element(i) == x
    assert G.elements == sorted(G.elements)
    assert G.add((2, 3), (2, 3)) == (1, 2)
    assert G.element_order((1, 2)) == 6


def test_quotient_examples():
    G = parse_group_spec("2x2")
    q = quotient(G, generated_subgroup(G, [(1, 1)]))
    assert len(q) == 2 and q.coset_reps == ((0, 0), (0, 1))
    assert q.rep_of((1, 0)) == (0, 1)
    trivial = quotient(G, generated_subgroup(G, []))
    assert list(trivial.coset_reps) == G.elements
    full = quotient(G, generated_subgroup(G, G.elements))
    assert full.coset_reps == ((0, 0),)


def test_quotient_partitions():
    G = parse_group_spec("2x4")
    for H in enumerate_subgroups(G):
        q = quotient(G, H)
        cosets = [set(q.coset(c)) for c in range(len(q))]
        assert sum(map(len, cosets)) == G.order
        assert all(len(c) == H.order for c in cosets)
        assert all(q.coset_reps[c] == min(cosets[c]) for c in range(len(q)))


def test_character_eval_examples():
    G = parse_group_spec("3")
    phi1 = Character(G, (1,))
    assert character_eval(phi1, (2,)) == TorusExponent(2, 3)
    phi0 = Character(G, (0,))
    assert all(phi0(x).is_one for x in G.elements)
    H = parse_group_spec("2x4")
    chi = Character(H, (1, 3))
    assert chi((0, 0)).is_one
    assert chi((1, 1)) == TorusExponent(1, 2) * TorusExponent(3, 4)


def test_characters_are_homomorphisms():
    G = parse_group_spec("2x6")
    for y in G.elements:
        chi = Character(G, y)
        for a in G.elements[::5]:
            for b in G.elements[::7]:
                assert chi(G.add(a, b)) == chi(a) * chi(b)
