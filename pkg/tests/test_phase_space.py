import json
from itertools import combinations

import numpy as np
import pytest

from lagrange_weyl.groups import InputError, enumerate_subgroups, generated_subgroup, parse_group_spec
from lagrange_weyl.phase_space import (Multiplier, PhaseSpace, PhaseSpaceError, bicharacter,
                                       enumerate_lagrangians, is_isotropic, is_lagrangian,
                                       is_phase_space, load_multiplier, sigma_complement,
                                       standard_multiplier, validate_multiplier)
from lagrange_weyl.torus import TorusExponent


def _space(spec, convention="paper-matrix"):
    return PhaseSpace.standard(parse_group_spec(spec), convention)


def _brute_cocycle_defects(m):
    add = m.xi.add_table
    n = m.xi.order
    t = m.table
    return sorted((x, y, z) for x in range(n) for y in range(n) for z in range(n)
                  if (t[add[x, y], z] + t[x, y] - t[x, add[y, z]] - t[y, z]) % m.modulus)


def test_standard_multiplier_examples():
    G2 = parse_group_spec("2")
    m = standard_multiplier(G2)
    assert m((1, 1), (1, 1)) == TorusExponent(1, 2)
    for conv in ("paper-matrix", "paper-stated"):
        mm = standard_multiplier(parse_group_spec("2x3"), conv)
        assert not mm.table[:, 0].any()
    m3 = standard_multiplier(parse_group_spec("3"), "paper-stated")
    assert m3((0, 1), (1, 0)) == TorusExponent(-1, 3)


def test_conventions_are_conjugate():
    G = parse_group_spec("4")
    a = standard_multiplier(G, "paper-matrix")
    b = standard_multiplier(G, "paper-stated")
    assert a.conjugate().equals(b)


@pytest.mark.parametrize("spec", ["2", "3", "4", "2x2"])
def test_standard_multiplier_is_valid(spec):
    assert validate_multiplier(standard_multiplier(parse_group_spec(spec))).ok


def test_trivial_multiplier_valid_but_not_phase_space():
    xi = parse_group_spec("2x2")
    m = Multiplier(xi, np.zeros((4, 4), dtype=np.int64), 1)
    assert validate_multiplier(m).ok
    assert not is_phase_space(xi, m)
    with pytest.raises(PhaseSpaceError):
        PhaseSpace(parse_group_spec("2"), m)


@pytest.mark.parametrize("spec", ["2", "3", "2x2"])
def test_standard_is_phase_space(spec):
    m = standard_multiplier(parse_group_spec(spec))
    assert is_phase_space(m.xi, m)


@pytest.mark.parametrize("i,j,value", [(4, 5, 1), (0, 3, 2), (8, 8, 1), (3, 0, 1)])
def test_fault_injection_flags_exactly_touching_triples(i, j, value):
    m = standard_multiplier(parse_group_spec("3"))
    bad = m.with_entry(i, j, (int(m.table[i, j]) + value) % m.modulus)
    report = validate_multiplier(bad)
    assert sorted(report.cocycle_violations) == _brute_cocycle_defects(bad)
    assert report.cocycle_violations
    add = m.xi.add_table
    for x, y, z in report.cocycle_violations:
        touched = {(int(add[x, y]), z), (x, y), (x, int(add[y, z])), (y, z)}
        assert (i, j) in touched
    if i == 0 or j == 0:
        assert (i, j) in report.normalization_violations


def test_multiplier_file_roundtrip(tmp_path):
    G = parse_group_spec("3")
    m = standard_multiplier(G)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_triples()))
    loaded = load_multiplier(path, G)
    assert loaded.equals(m)
    assert is_phase_space(loaded.xi, loaded)


def test_multiplier_file_missing_entries_are_one(tmp_path):
    G = parse_group_spec("2")
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[3, 3, "1/2"]]))
    m = load_multiplier(path, G)
    assert m.at(3, 3) == TorusExponent(1, 2)
    assert m.at(1, 2).is_one


@pytest.mark.parametrize("content", ["not json", "{}", "[[0, 1]]", "[[0, 99, [1, 2]]]", "[[0, 1, [1, 0]]]",
                                     "[[0, 1, \"a/b\"]]"])
def test_bad_multiplier_file(tmp_path, content):
    path = tmp_path / "m.json"
    path.write_text(content)
    with pytest.raises(InputError):
        load_multiplier(path, parse_group_spec("2"))


def test_missing_multiplier_file(tmp_path):
    with pytest.raises(InputError):
        load_multiplier(tmp_path / "absent.json", parse_group_spec("2"))


def test_sigma_alternating():
    ps = _space("2x2")
    s = bicharacter(ps.multiplier)
    assert np.all((s.table + s.table.T) % s.modulus == 0)
    assert not np.diag(s.table).any()


def test_sigma_complement_examples():
    ps = _space("2")
    H1 = generated_subgroup(ps.xi, [(1, 0)])
    assert sigma_complement(ps, H1).same_elements(H1)
    zero = generated_subgroup(ps.xi, [])
    assert sigma_complement(ps, zero).order == ps.xi.order
    full = generated_subgroup(ps.xi, ps.xi.elements)
    assert sigma_complement(ps, full).order == 1


def test_is_lagrangian_examples():
    ps2 = _space("2")
    assert is_lagrangian(ps2, generated_subgroup(ps2.xi, [(1, 1)]))
    assert not is_lagrangian(ps2, generated_subgroup(ps2.xi, []))
    ps3 = _space("3")
    assert is_lagrangian(ps3, generated_subgroup(ps3.xi, [(0, 1)]))


def _brute_lagrangians(ps):
    """Order-sqrt(|Xi|) subgroups with sigma trivial on H x H, found from generator pairs."""
    n = ps.xi.order
    root = int(round(n ** 0.5))
    found = set()
    elems = ps.xi.elements
    for r in (1, 2):
        for gens in combinations(elems, r):
            H = generated_subgroup(ps.xi, gens)
            if H.order == root and is_isotropic(ps, H):
                found.add(H.indices)
    return found


@pytest.mark.parametrize("spec,count", [("2", 3), ("3", 4), ("4", 7), ("5", 6), ("2x2", 15), ("6", 12)])
def test_lagrangian_counts(spec, count):
    ps = _space(spec)
    lags = enumerate_lagrangians(ps)
    assert len(lags) == count
    assert {H.indices for H in lags} == _brute_lagrangians(ps)


def test_complement_antitone_and_double():
    ps = _space("4")
    subs = enumerate_subgroups(ps.xi)
    comps = {H.indices: sigma_complement(ps, H) for H in subs}
    for H in subs:
        assert sigma_complement(ps, comps[H.indices]).same_elements(H)
        assert comps[H.indices].order * H.order == ps.xi.order
        for K in subs:
            if H.issubset(K):
                assert comps[K.indices].issubset(comps[H.indices])


@pytest.mark.parametrize("spec", ["2", "3", "4", "2x2"])
def test_lagrangians_convention_independent(spec):
    a = enumerate_lagrangians(_space(spec, "paper-matrix"))
    b = enumerate_lagrangians(_space(spec, "paper-stated"))
    assert [H.indices for H in a] == [H.indices for H in b]


def test_non_square_group_has_no_lagrangians():
    xi = parse_group_spec("2x2x2")
    m = Multiplier(xi, np.zeros((8, 8), dtype=np.int64), 1)
    ps = PhaseSpace.__new__(PhaseSpace)
    ps.xi, ps.multiplier = xi, m
    assert enumerate_lagrangians(ps) == []
