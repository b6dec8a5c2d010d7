import numpy as np
import pytest

from lagrange_weyl.groups import InputError, parse_group_spec
from lagrange_weyl.phase_space import Multiplier, PhaseSpace, PhaseSpaceError, standard_multiplier
from lagrange_weyl.torus import TorusExponent
from lagrange_weyl.weyl import (ExactUnitary, ProjectiveRep, RepresentationError, derive_multiplier,
                                direct_sum, is_irreducible, schrodinger_rep, snap, translation_action,
                                trivial_rep, weyl_matrix)

ONE = TorusExponent(0, 1)


def _space(spec, convention="paper-matrix"):
    return PhaseSpace.standard(parse_group_spec(spec), convention)


def test_weyl_matrix_examples():
    ps3 = _space("3")
    assert np.array_equal(weyl_matrix(ps3, ((1,), (0,))).to_dense(), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    ps2 = _space("2")
    assert np.array_equal(weyl_matrix(ps2, (1, 1)).to_dense(), [[0, -1], [1, 0]])
    for spec in ("2", "3", "2x2"):
        ps = _space(spec)
        assert weyl_matrix(ps, ps.xi.zero).is_identity()


@pytest.mark.parametrize("spec", ["2", "3", "4", "2x2", "6"])
@pytest.mark.parametrize("convention", ["paper-matrix", "paper-stated"])
def test_derived_multiplier_matches(spec, convention):
    ps = _space(spec, convention)
    rep = schrodinger_rep(ps)
    assert rep.projective_defects() == []
    assert derive_multiplier(rep).equals(ps.multiplier)


def test_derive_multiplier_example_entries():
    m = derive_multiplier(schrodinger_rep(_space("2")))
    assert m((1, 1), (1, 1)) == TorusExponent(1, 2)
    assert not m.table[:, 0].any()


def test_derive_multiplier_rejects_inconsistent_family():
    ps = _space("2")
    rep = schrodinger_rep(ps)
    mats = list(rep.matrices)
    mats[1] = ExactUnitary.from_entries([[ONE, 0], [0, ONE]])
    mats[2] = ExactUnitary.from_entries([[0, ONE], [ONE, 0]])
    with pytest.raises(RepresentationError):
        derive_multiplier(ProjectiveRep(ps.xi, ps.multiplier, mats))


def test_adjoint_formula():
    # U_x^* = conj(m(x, -x)) U_{-x}
    ps = _space("4")
    rep = schrodinger_rep(ps)
    m = ps.multiplier
    for x in ps.xi.elements:
        nx = ps.xi.neg(x)
        assert rep[x].adjoint() == rep[nx].scaled(m(x, nx).inverse())


def test_unitarity_and_monomial():
    rep = schrodinger_rep(_space("2x2"))
    for x in range(rep.xi.order):
        D = rep.dense(x)
        assert np.allclose(D @ D.conj().T, np.eye(rep.dim))
        assert np.all(np.count_nonzero(np.abs(D) > 0.5, axis=1) == 1)


def test_translation_action():
    ps = _space("2")
    rep = schrodinger_rep(ps)
    A = np.diag([2.0, 5.0])
    assert np.allclose(translation_action(rep, (0, 0), A), A)
    assert np.allclose(translation_action(rep, (1, 1), np.eye(2)), np.eye(2))
    assert np.allclose(translation_action(rep, (1, 0), A), np.diag([5.0, 2.0]))
    U = rep[(0, 1)]
    assert translation_action(rep, (1, 0), U) == rep[(1, 0)] @ U @ rep[(1, 0)].adjoint()
    with pytest.raises(InputError):
        translation_action(rep, (1, 0), np.eye(3))


def test_translation_group_action():
    ps = _space("3")
    rep = schrodinger_rep(ps)
    rng = np.random.default_rng(3)
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    for z in ps.xi.elements:
        for w in ps.xi.elements:
            lhs = translation_action(rep, z, translation_action(rep, w, A))
            rhs = translation_action(rep, ps.xi.add(z, w), A)
            assert np.allclose(lhs, rhs)


def test_irreducibility():
    rep = schrodinger_rep(_space("2"))
    assert is_irreducible(rep)
    assert not is_irreducible(direct_sum(rep, rep))
    assert is_irreducible(trivial_rep())


def test_direct_sum_is_projective():
    rep = schrodinger_rep(_space("3"))
    double = direct_sum(rep, rep)
    assert double.dim == 6
    assert double.projective_defects() == []


def test_non_standard_multiplier_has_no_weyl_matrix():
    G = parse_group_spec("3")
    m = standard_multiplier(G)
    beta = np.zeros(m.xi.order, dtype=np.int64)
    beta[1] = 1
    add = m.xi.add_table
    twisted = Multiplier(m.xi, m.table + beta[add] - beta[:, None] - beta[None, :], 3)
    assert not twisted.equals(m)
    ps = PhaseSpace(G, twisted)
    assert ps.convention is None
    with pytest.raises(PhaseSpaceError):
        weyl_matrix(ps, (1, 1))


def test_snap():
    assert snap(1e-12, 4) == 0
    assert snap(1j, 4) == TorusExponent(1, 4)
    assert snap(complex(np.exp(2j * np.pi / 3)), 3) == TorusExponent(1, 3)
    with pytest.raises(ValueError):
        snap(0.5, 4)


def test_exact_unitary_algebra():
    U = ExactUnitary.from_entries([[0, TorusExponent(1, 3)], [ONE, 0]])
    assert (U @ U.adjoint()).is_identity()
    assert U.entry(0, 1) == TorusExponent(1, 3)
    assert U.entry(0, 0) is None
    assert U.scaled(TorusExponent(1, 2)).ratio_to(U) == TorusExponent(1, 2)
    assert U.kron_identity(2).dim == 4
    with pytest.raises(ValueError):
        ExactUnitary.from_entries([[ONE, ONE], [0, ONE]])
