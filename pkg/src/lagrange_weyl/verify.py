"""The verification battery: every invariant as a named, reported check.

Each phase space contributes one "space" case (group, multiplier, fixture
and representation checks) plus one case per subgroup.  Lagrangian subgroups
additionally run the canonical-representation, Gelfand and tensor suites.
Reports are deterministic for a fixed seed: random draws come from a
generator keyed by (seed, case key) and timing never enters the JSON.
"""

from __future__ import annotations

import json
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import fixtures as fixture_module
from .algebra import (TOL, DegeneracyError, GelfandTransform, OperatorAlgebra, orthonormal_span,
                      block_diagonal_residual, blocks_of, commutant_basis,
                      double_commutant, from_blocks, gelfand_spectrum, intertwiner,
                      is_commutative, is_maximal_abelian, label_spectrum, span_basis,
                      subgroup_commutant, TensorRep, tensor_commutant, tensor_transport)
from .canonical import (CovariantSpace, alpha_solutions, alpha_solutions_brute_force,
                        coboundary_defects, phi_functional_defects, trivialize_on_H)
from .exact import ExactMatrix
from .forms import algebra_form, compare_printed, forms_equal, parse_form
from .groups import (Character, FiniteAbelianGroup, Subgroup, character_eval,
                     enumerate_subgroups, generated_subgroup, parse_group_spec, quotient)
from .phase_space import (Convention, PhaseSpace, enumerate_lagrangians, is_isotropic,
                          is_lagrangian, is_phase_space, sigma_complement, validate_multiplier)
from .torus import TorusExponent
from .weyl import (ExactUnitary, ProjectiveRep, derive_multiplier, is_irreducible,
                   schrodinger_rep, translation_action)

SCHEMA = 1
BATTERY = ("2", "3", "4", "5", "2x2", "6")
DEFAULT_TENSOR_KS = (2, 3)
RANDOM_ELEMENTS = 20

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FIXTURE = 3
EXIT_INVARIANT = 4
EXIT_DEGENERACY = 5

# name -> (kind, what it asserts)
REGISTRY: dict[str, tuple[str, str]] = {
    # group_core
    "group.character_homomorphism": ("invariant", "chi(x+y) = chi(x) chi(y) exactly"),
    "group.torus_arithmetic": ("invariant", "associativity and inverses of torus exponents"),
    "group.subgroups_closed": ("invariant", "enumerated subgroups are closed and |H| divides |Xi|"),
    "group.subgroups_complete": ("invariant", "adjoining any element to a listed subgroup stays in the list"),
    "group.quotient_partition": ("invariant", "coset labels are H-invariant and cosets partition Xi"),
    # phase_space
    "phase_space.multiplier_valid": ("invariant", "cocycle and normalization hold everywhere"),
    "phase_space.is_phase_space": ("invariant", "x -> sigma(., x) is injective"),
    "phase_space.sigma_alternating": ("invariant", "sigma(x,x) = 1 and sigma(x,y) sigma(y,x) = 1"),
    "phase_space.convention_independence": ("invariant", "both conventions give the same complements and Lagrangians"),
    "phase_space.complement_antitone": ("invariant", "H <= K implies K^sigma <= H^sigma"),
    "phase_space.double_complement": ("invariant", "H^sigma^sigma = H"),
    "phase_space.lagrangian_brute_force": ("invariant", "Lagrangian list equals isotropic subgroups of order sqrt|Xi|"),
    "phase_space.lagrangian_symmetric": ("invariant", "m is symmetric on a Lagrangian H"),
    # weyl_rep
    "weyl.projective_relation": ("invariant", "U_x U_y = m(x,y) U_{x+y} exactly"),
    "weyl.adjoint_formula": ("invariant", "U_x^* = conj(m(x,-x)) U_{-x} exactly"),
    "weyl.monomial": ("invariant", "each U_x is a permutation matrix times roots of unity of order dividing exp(G)"),
    "weyl.derived_multiplier": ("invariant", "the multiplier read off the matrices is m"),
    "weyl.translation_group_action": ("invariant", "alpha_z alpha_w = alpha_{z+w} exactly"),
    "weyl.irreducible": ("invariant", "the Schrodinger representation has a one-dimensional commutant"),
    # canonical_rep
    "canonical.alpha_coboundary": ("invariant", "alpha(h+h') = alpha(h) alpha(h') m(h,h') exactly"),
    "canonical.alpha_brute_force": ("invariant", "solver solutions equal exhaustive enumeration"),
    "canonical.phi_functional": ("invariant", "Phi(x+h) alpha(h) m(h,x) = Phi(x) for all x, h"),
    "canonical.covariance_consistency": ("invariant", "two-step and one-step covariance agree"),
    "canonical.basis_covariance": ("invariant", "each basis function obeys the covariance rule"),
    "canonical.nonzero": ("invariant", "dim L^2(Xi//H) = |Xi/H| >= 1"),
    "canonical.a_phi_unitary": ("invariant", "A_Phi^* A_Phi = I exactly"),
    "canonical.action_h_invariance": ("invariant", "Phi(t+x)/Phi(t) m(t,x) is constant on cosets"),
    "canonical.transported_action": ("invariant", "closed form equals the ambient conjugation exactly"),
    "canonical.diagonal_h_action": ("invariant", "U_h acts by (1/alpha(h)) sigma(t+H, h)"),
    "canonical.projective_relation": ("invariant", "the canonical representation is projective with multiplier m"),
    "canonical.irreducible": ("invariant", "the canonical representation has a one-dimensional commutant"),
    "canonical.multiplication_norm": ("invariant", "||M_f|| = max|f|"),
    # algebra_lab
    "algebra.span_theorem": ("invariant", "commutant of H equals span{U_x : x in H^sigma}"),
    "algebra.commutant_dimension": ("invariant", "dim commutant = |Xi|/|H| = |H^sigma|"),
    "algebra.closure": ("invariant", "commutant is closed under products and adjoints"),
    "algebra.rank_margin": ("invariant", "singular-value gap of the commutant system exceeds 1e7"),
    "algebra.commutative_iff_isotropic": ("invariant", "commutant is abelian iff H^sigma <= H"),
    "algebra.maximal_abelian_iff_lagrangian": ("invariant", "commutant is its own commutant iff H is Lagrangian"),
    "gelfand.spectrum_size": ("invariant", "|Xi/H| characters"),
    "gelfand.characters_multiplicative": ("invariant", "chi(AB) = chi(A) chi(B), chi(A^*) = conj chi(A)"),
    "gelfand.spectrum_labels": ("invariant", "characters are labeled bijectively by cosets"),
    "gelfand.transform_multiplicative": ("invariant", "f_AB = f_A f_B"),
    "gelfand.transform_star": ("invariant", "f_{A^*} = conj f_A"),
    "gelfand.transform_isometric": ("invariant", "||A|| = max |f_A|"),
    "gelfand.round_trip": ("invariant", "A -> f -> A"),
    "gelfand.translation_compatible": ("invariant", "f_{alpha_z(A)} = f_A(. + z)"),
    "gelfand.c1_collapse": ("invariant", "||alpha_z(A) - A|| is finite for every z"),
    "svn.intertwiner_unique": ("invariant", "Schrodinger and canonical representations intertwine in exactly one dimension"),
    "svn.alpha_choice_independence": ("invariant", "a second alpha gives the same intertwiner dimension and spectrum"),
    "tensor.projective_relation": ("invariant", "U_x (x) I_k keeps the multiplier"),
    "tensor.k1_reduces": ("invariant", "k = 1 gives the scalar commutant"),
    "tensor.dimension": ("invariant", "dim = |Xi/H| k^2"),
    "tensor.block_diagonal": ("invariant", "transported elements are block diagonal"),
    "tensor.block_round_trip": ("invariant", "blocks rebuild the transported operator"),
    # embedded example data
    "fixture.weyl_matrices": ("fixture", "printed Weyl matrices match entrywise"),
    "fixture.lagrangians": ("fixture", "printed Lagrangian lists match"),
    "fixture.algebra_forms": ("fixture", "printed algebra forms match"),
    "fixture.oracle_forms": ("fixture", "computed forms span the commutant; printed versions compared"),
}


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | degenerate
    residual: float | int | None = None
    expected: Any = None
    actual: Any = None

    @property
    def kind(self) -> str:
        return REGISTRY[self.name][0]

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "residual": _fmt_residual(self.residual),
                "expected": self.expected, "actual": self.actual}


@dataclass
class VerificationReport:
    group: str
    convention: str
    subgroup: str | None
    checks: list[CheckResult] = field(default_factory=list)
    seed: int = 0
    timing: float = 0.0

    @property
    def key(self) -> tuple:
        return (self.group, self.convention, self.subgroup or "")

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> dict:
        return {"group": self.group, "convention": self.convention, "subgroup": self.subgroup,
                "seed": self.seed, "checks": [c.to_json() for c in self.checks]}


def _fmt_residual(r):
    if r is None or isinstance(r, (int, np.integer)):
        return None if r is None else int(r)
    r = float(r)
    if not np.isfinite(r):
        return str(r)
    # two significant digits keep reports stable against last-bit noise
    return float(f"{r:.1e}")


class _Recorder:
    def __init__(self, report: VerificationReport):
        self.report = report

    def add(self, name: str, ok: bool, residual=None, expected=None, actual=None) -> None:
        if name not in REGISTRY:
            raise KeyError(f"unregistered check {name}")
        self.report.checks.append(CheckResult(name, "pass" if ok else "fail", residual,
                                              _plain(expected), _plain(actual)))

    def run(self, name: str, fn: Callable[[], tuple]) -> None:
        """fn returns (ok, residual, expected, actual); exceptions become failures."""
        try:
            ok, residual, expected, actual = fn()
        except DegeneracyError as exc:
            self.report.checks.append(CheckResult(name, "degenerate", None, None, str(exc)))
            return
        except Exception as exc:  # noqa: BLE001 - a crash is a failed check
            self.report.checks.append(CheckResult(name, "fail", None, None,
                                                  f"{type(exc).__name__}: {exc}"))
            return
        self.add(name, ok, residual, expected, actual)


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return _fmt_residual(float(v))
    if isinstance(v, float):
        return _fmt_residual(v)
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    if isinstance(v, list):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


def _rng(seed: int, key: Sequence[str]) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32("|".join(key).encode())])


def _fmt_elements(elems: Iterable[Sequence[int]]) -> str:
    return "{" + ",".join("(" + ",".join(map(str, x)) + ")" for x in elems) + "}"


# -- per phase space ---------------------------------------------------------

def _group_checks(rec: _Recorder, ps: PhaseSpace, subgroups: list[Subgroup]) -> None:
    G, xi = ps.G, ps.xi

    def characters():
        bad = 0
        for phi in G.elements:
            chi = Character(G, phi)
            for x, y in product(G.elements, repeat=2):
                if character_eval(chi, G.add(x, y)) != character_eval(chi, x) * character_eval(chi, y):
                    bad += 1
        return bad == 0, bad, 0, bad
    rec.run("group.character_homomorphism", characters)

    def torus():
        M = xi.exponent
        vals = [TorusExponent(k, M) for k in range(M)]
        bad = sum((a * b) * c != a * (b * c) for a, b, c in product(vals, repeat=3))
        bad += sum(not (a * a.inverse()).is_one for a in vals)
        return bad == 0, bad, 0, bad
    rec.run("group.torus_arithmetic", torus)

    def closed():
        bad = 0
        for H in subgroups:
            if xi.order % H.order or not generated_subgroup(xi, H.elements).same_elements(H):
                bad += 1
        return bad == 0, bad, 0, bad
    rec.run("group.subgroups_closed", closed)

    def complete():
        keys = {H.indices for H in subgroups}
        missing = 0
        for H in subgroups:
            for x in xi.elements:
                if x not in H and generated_subgroup(xi, list(H.generators) + [x]).indices not in keys:
                    missing += 1
        has_zero = frozenset({0}) in keys
        return missing == 0 and has_zero, missing, len(subgroups), len(keys)
    rec.run("group.subgroups_complete", complete)

    def valid():
        r = validate_multiplier(ps.multiplier)
        return r.ok, len(r), 0, len(r)
    rec.run("phase_space.multiplier_valid", valid)
    rec.run("phase_space.is_phase_space",
            lambda: (is_phase_space(xi, ps.multiplier), None, True, is_phase_space(xi, ps.multiplier)))

    def alternating():
        s = ps.sigma.table
        bad = int(np.count_nonzero(np.diag(s))) + int(np.count_nonzero((s + s.T) % ps.sigma.modulus))
        return bad == 0, bad, 0, bad
    rec.run("phase_space.sigma_alternating", alternating)

    def conventions():
        other_conv = (Convention.PAPER_STATED if ps.convention != Convention.PAPER_STATED.value
                      else Convention.PAPER_MATRIX)
        other = PhaseSpace.standard(G, other_conv)
        bad = sum(not sigma_complement(ps, H).same_elements(sigma_complement(other, H)) for H in subgroups)
        same_lag = ([H.indices for H in enumerate_lagrangians(ps)]
                    == [H.indices for H in enumerate_lagrangians(other)])
        return bad == 0 and same_lag, bad, True, same_lag
    if ps.convention in (c.value for c in Convention):
        rec.run("phase_space.convention_independence", conventions)

    comps = {H.indices: sigma_complement(ps, H) for H in subgroups}

    def antitone():
        bad = 0
        for H in subgroups:
            for K in subgroups:
                if H.issubset(K) and not comps[K.indices].issubset(comps[H.indices]):
                    bad += 1
        return bad == 0, bad, 0, bad
    rec.run("phase_space.complement_antitone", antitone)

    def double():
        bad = sum(not sigma_complement(ps, comps[H.indices]).same_elements(H) for H in subgroups)
        return bad == 0, bad, 0, bad
    rec.run("phase_space.double_complement", double)

    def lag_brute():
        n = xi.order
        root = int(round(n ** 0.5))
        brute = []
        for H in subgroups:
            if H.order != root or root * root != n:
                continue
            if all(ps.sigma.at(xi.index(a), xi.index(b)).is_one for a in H for b in H):
                brute.append(H.indices)
        listed = [H.indices for H in enumerate_lagrangians(ps)]
        return sorted(map(sorted, brute)) == sorted(map(sorted, listed)), None, len(brute), len(listed)
    rec.run("phase_space.lagrangian_brute_force", lag_brute)


def _weyl_checks(rec: _Recorder, ps: PhaseSpace, rep: ProjectiveRep, rng: np.random.Generator) -> None:
    xi, G = ps.xi, ps.G
    m = ps.multiplier
    rec.run("weyl.projective_relation",
            lambda: (lambda d: (not d, len(d), 0, len(d)))(rep.projective_defects()))

    def adjoint():
        bad = 0
        for x in xi.elements:
            if rep[x].adjoint() != rep[xi.neg(x)].scaled(m(x, xi.neg(x)).inverse()):
                bad += 1
        return bad == 0, bad, 0, bad
    rec.run("weyl.adjoint_formula", adjoint)

    def monomial():
        bad = 0
        for U in rep.matrices:
            if G.exponent % U.modulus or sorted(U.rows.tolist()) != list(range(U.dim)):
                bad += 1
        return bad == 0, bad, 0, bad
    rec.run("weyl.monomial", monomial)
    rec.run("weyl.derived_multiplier",
            lambda: (lambda d: (d.equals(m), None, True, d.equals(m)))(derive_multiplier(rep)))

    def action():
        probes = [rep.matrices[i] for i in sorted({0, 1, xi.order - 1})]
        bad = 0
        for z, w in product(range(xi.order), repeat=2):
            zw = int(xi.add_table[z, w])
            for A in probes:
                if translation_action(rep, z, translation_action(rep, w, A)) != translation_action(rep, zw, A):
                    bad += 1
        X = rng.standard_normal((rep.dim, rep.dim)) + 1j * rng.standard_normal((rep.dim, rep.dim))
        res = max(float(np.linalg.norm(translation_action(rep, z, translation_action(rep, w, X))
                                       - translation_action(rep, int(xi.add_table[z, w]), X)))
                  for z, w in product(range(xi.order), repeat=2))
        return bad == 0 and res < TOL, res, 0, bad
    rec.run("weyl.translation_group_action", action)
    rec.run("weyl.irreducible", lambda: (lambda ok: (ok, None, True, ok))(is_irreducible(rep)))


def _scalar(text: str):
    text = text.strip()
    if text == "0":
        return 0
    if text == "1":
        return TorusExponent(0, 1)
    if text == "-1":
        return TorusExponent(1, 2)
    if text.startswith("e(") and text.endswith(")"):
        num, den = text[2:-1].split("/")
        return TorusExponent(int(num), int(den))
    raise ValueError(f"not a matrix entry: {text!r}")


def _fixture_checks(rec: _Recorder, ps: PhaseSpace, rep: ProjectiveRep, data: dict) -> None:
    G = ps.G

    def weyl():
        bad = []
        for (j, k), rows in data["weyl"].items():
            printed = ExactUnitary.from_entries([[_scalar(e) for e in row] for row in rows])
            if printed != rep[ps.join((j,), (k,))]:
                bad.append([j, k])
        return not bad, len(bad), len(data["weyl"]), bad
    rec.run("fixture.weyl_matrices", weyl)

    lags = enumerate_lagrangians(ps)
    by_label = {name: generated_subgroup(ps.xi, elems) for name, elems in data["lagrangians"].items()}

    def lagrangians():
        printed = sorted(sorted(H.indices) for H in by_label.values())
        exact_sets = all(len(H) == len(data["lagrangians"][n]) for n, H in by_label.items())
        computed = sorted(sorted(H.indices) for H in lags)
        mapping = {n: next((i for i, L in enumerate(lags) if L.same_elements(H)), None)
                   for n, H in by_label.items()}
        return printed == computed and exact_sets, None, len(printed), mapping
    rec.run("fixture.lagrangians", lagrangians)

    def forms():
        bad, rendered = [], {}
        for name, rows in data["forms"].items():
            f = algebra_form(rep, by_label[name])
            rendered[name] = f.render()
            if not forms_equal(f.entries, parse_form(rows)):
                bad.append(name)
        return not bad, len(bad), sorted(data["forms"]), rendered
    rec.run("fixture.algebra_forms", forms)

    oracle_names = sorted(set(by_label) - set(data["forms"]))

    def oracle():
        out, ok = {}, True
        for name in oracle_names:
            H = by_label[name]
            f = algebra_form(rep, H)
            span = OperatorAlgebra(G.order, [], "span-of-set")
            span.basis = orthonormal_span([B.to_dense() for B in f.basis])
            r = span.subspace_residual(subgroup_commutant(rep, H))
            ok = ok and r < TOL
            entry = {"computed": f.render(), "span_residual": _fmt_residual(r)}
            if name in data["printed_only"]:
                entry["printed"] = compare_printed(f, data["printed_only"][name])
            out[name] = entry
        return ok, None, oracle_names, out
    if oracle_names:
        rec.run("fixture.oracle_forms", oracle)


# -- per subgroup ------------------------------------------------------------

def _subgroup_checks(rec: _Recorder, ps: PhaseSpace, rep: ProjectiveRep, H: Subgroup) -> OperatorAlgebra:
    xi = ps.xi

    def partition():
        q = quotient(xi, H)
        bad = 0
        for x in range(xi.order):
            for h in H.indices:
                if q.labels[x] != q.labels[xi.add_table[x, h]]:
                    bad += 1
        sizes = [len(q.coset(c)) for c in range(len(q))]
        ok = bad == 0 and sum(sizes) == xi.order and set(sizes) == {H.order}
        return ok, bad, xi.order, sum(sizes)
    rec.run("group.quotient_partition", partition)

    comp = sigma_complement(ps, H)
    alg = subgroup_commutant(rep, H)
    rec.run("algebra.span_theorem",
            lambda: (lambda r: (r < TOL, r, alg.dimension, span_basis(rep, comp).dimension))(
                alg.subspace_residual(span_basis(rep, comp))))
    rec.run("algebra.commutant_dimension",
            lambda: (alg.dimension == xi.order // H.order == comp.order, None,
                     xi.order // H.order, alg.dimension))
    rec.run("algebra.closure", lambda: (lambda r: (r < TOL, r, 0, None))(alg.closure_residual()))
    rec.run("algebra.rank_margin", lambda: (alg.margin > 1e7, None, ">1e7",
                                            "inf" if not np.isfinite(alg.margin) else f"{alg.margin:.0e}"))
    rec.run("algebra.commutative_iff_isotropic",
            lambda: (lambda a, b: (a == b, None, b, a))(is_commutative(alg), comp.issubset(H)))
    rec.run("algebra.maximal_abelian_iff_lagrangian",
            lambda: (lambda a, b: (a == b, None, b, a))(is_maximal_abelian(alg), is_lagrangian(ps, H)))
    return alg


def _canonical_checks(rec: _Recorder, ps: PhaseSpace, H: Subgroup, space: CovariantSpace,
                      rng: np.random.Generator) -> None:
    xi, m = ps.xi, ps.multiplier
    idx = sorted(H.indices)
    rec.run("phase_space.lagrangian_symmetric",
            lambda: (lambda bad: (bad == 0, bad, 0, bad))(
                int(np.count_nonzero((m.table[np.ix_(idx, idx)] - m.table[np.ix_(idx, idx)].T) % m.modulus))))
    rec.run("canonical.alpha_coboundary",
            lambda: (lambda d: (not d, len(d), 0, len(d)))(coboundary_defects(m, space.alpha)))

    def brute():
        modulus, sols = alpha_solutions(m, H)
        found = alpha_solutions_brute_force(m, H, modulus)
        if found is None:
            return True, None, "skipped: too many tuples", len(sols)
        return sorted(found) == sols, None, len(found), len(sols)
    rec.run("canonical.alpha_brute_force", brute)
    rec.run("canonical.phi_functional",
            lambda: (lambda d: (not d, len(d), 0, len(d)))(phi_functional_defects(m, space.phi)))
    rec.run("canonical.covariance_consistency",
            lambda: (lambda d: (not d, len(d), 0, len(d)))(space.covariance_defects()))
    rec.run("canonical.basis_covariance",
            lambda: (lambda d: (not d, len(d), 0, len(d)))(space.basis_defects()))
    rec.run("canonical.nonzero", lambda: (space.dim == xi.order // H.order >= 1, None,
                                          xi.order // H.order, space.dim))

    def unitary():
        A = space.a_phi()
        gram = space.a_phi_adjoint() @ A
        return gram == ExactMatrix.identity(space.dim), None, "identity", len(gram.entries)
    rec.run("canonical.a_phi_unitary", unitary)

    def invariance():
        bad = sum(len(space.action_invariance_defects(x)) for x in range(xi.order))
        return bad == 0, bad, 0, bad
    rec.run("canonical.action_h_invariance", invariance)

    def transported():
        bad = 0
        for x in range(xi.order):
            closed = space.a_phi_closed_form(x)
            if ExactMatrix.from_unitary(closed) != space.a_phi_conjugation(x) or closed != space.weyl_matrix(x):
                bad += 1
        return bad == 0, bad, 0, bad
    rec.run("canonical.transported_action", transported)

    def diag_h():
        bad = sum(space.weyl_matrix(h) != space.diagonal_h_action(h) for h in idx)
        return bad == 0, bad, 0, bad
    rec.run("canonical.diagonal_h_action", diag_h)

    canon = space.rep()
    rec.run("canonical.projective_relation",
            lambda: (lambda d: (not d, len(d), 0, len(d)))(canon.projective_defects()))
    rec.run("canonical.irreducible",
            lambda: (lambda ok: (ok, None, True, ok))(is_irreducible(canon)))

    def mult_norm():
        worst = 0.0
        for _ in range(RANDOM_ELEMENTS):
            f = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
            target = float(np.max(np.abs(f)))
            worst = max(worst,
                        abs(float(np.linalg.norm(space.multiplication_operator(f), 2)) - target),
                        abs(space.ambient_multiplication_norm(f) - target))
        return worst < TOL, worst, 0, None
    rec.run("canonical.multiplication_norm", mult_norm)


def _gelfand_checks(rec: _Recorder, ps: PhaseSpace, rep: ProjectiveRep, H: Subgroup,
                    alg: OperatorAlgebra, space: CovariantSpace, seed: int,
                    rng: np.random.Generator) -> GelfandTransform | None:
    xi = ps.xi
    n_cosets = xi.order // H.order
    transform: dict[str, GelfandTransform] = {}

    def svn():
        V, k = intertwiner(rep, space.rep())
        return k == 1, None, 1, k
    rec.run("svn.intertwiner_unique", svn)

    def build():
        transform["T"] = GelfandTransform(ps, H, rep=rep, space=space)
        return True
    try:
        build()
    except Exception as exc:  # noqa: BLE001
        for name in ("gelfand.spectrum_labels", "gelfand.transform_multiplicative",
                     "gelfand.transform_star", "gelfand.transform_isometric", "gelfand.round_trip",
                     "gelfand.translation_compatible"):
            rec.add(name, False, None, None, f"{type(exc).__name__}: {exc}")
        return None
    T = transform["T"]

    spectrum: dict[str, Any] = {}

    def size():
        data = gelfand_spectrum(alg, seed=seed)
        spectrum["data"] = data
        return len(data) == n_cosets, None, n_cosets, len(data)
    rec.run("gelfand.spectrum_size", size)

    samples = [alg.random_element(rng) for _ in range(RANDOM_ELEMENTS)]

    def characters():
        data = spectrum["data"]
        worst = 0.0
        for A, B in zip(samples, samples[1:] + samples[:1]):
            for k in range(len(data)):
                worst = max(worst,
                            abs(data.evaluate(k, A @ B) - data.evaluate(k, A) * data.evaluate(k, B)),
                            abs(data.evaluate(k, A.conj().T) - np.conj(data.evaluate(k, A))))
        return worst < TOL, worst, 0, None
    if "data" in spectrum:
        rec.run("gelfand.characters_multiplicative", characters)

        def labels():
            data = label_spectrum(spectrum["data"], T, alg)
            labs = sorted(data.point_labels)
            return labs == sorted(T.point_labels), None, len(T.point_labels), len(set(labs))
        rec.run("gelfand.spectrum_labels", labels)

    def multiplicative():
        worst = 0.0
        for A, B in zip(samples, samples[1:] + samples[:1]):
            worst = max(worst, float(np.max(np.abs(T(A @ B) - T(A) * T(B)))))
        return worst < TOL, worst, 0, None
    rec.run("gelfand.transform_multiplicative", multiplicative)

    def star():
        worst = max(float(np.max(np.abs(T(A.conj().T) - np.conj(T(A))))) for A in samples)
        return worst < TOL, worst, 0, None
    rec.run("gelfand.transform_star", star)

    def isometric():
        worst = max(abs(float(np.linalg.norm(A, 2)) - float(np.max(np.abs(T(A))))) for A in samples)
        return worst < TOL, worst, 0, len(samples)
    rec.run("gelfand.transform_isometric", isometric)

    def round_trip():
        worst = max(float(np.linalg.norm(T.inverse(T(A)) - A)) for A in samples)
        return worst < TOL, worst, 0, None
    rec.run("gelfand.round_trip", round_trip)

    def translation():
        worst = 0.0
        for z in range(xi.order):
            for A in samples[:3]:
                lhs = T(translation_action(rep, z, A))
                worst = max(worst, float(np.max(np.abs(lhs - T.shift(T(A), z)))))
        return worst < TOL, worst, 0, None
    rec.run("gelfand.translation_compatible", translation)

    def c1():
        norms = [float(np.linalg.norm(translation_action(rep, z, samples[0]) - samples[0], 2))
                 for z in range(xi.order)]
        ok = all(np.isfinite(norms)) and max(norms) <= 2 * np.linalg.norm(samples[0], 2) + TOL
        return ok, None, "finite", max(norms)
    rec.run("gelfand.c1_collapse", c1)

    def alpha_choice():
        _, sols = alpha_solutions(ps.multiplier, H)
        if len(sols) < 2:
            return True, None, "single alpha", len(sols)
        other = CovariantSpace(ps, H, alpha=trivialize_on_H(ps.multiplier, H, 1))
        _, k = intertwiner(rep, other.rep())
        T2 = GelfandTransform(ps, H, rep=rep, space=other)
        worst = max(float(np.max(np.abs(np.sort_complex(T2(A)) - np.sort_complex(T(A)))))
                    for A in samples[:5])
        return k == 1 and worst < 1e-7, worst, 1, k
    rec.run("svn.alpha_choice_independence", alpha_choice)
    return T


def _tensor_checks(rec: _Recorder, ps: PhaseSpace, rep: ProjectiveRep, H: Subgroup,
                   alg: OperatorAlgebra, T: GelfandTransform | None, ks: Sequence[int],
                   rng: np.random.Generator) -> None:
    n_cosets = ps.xi.order // H.order

    def k1():
        r = tensor_commutant(rep, 1, H).subspace_residual(alg)
        return r < TOL, r, alg.dimension, None
    rec.run("tensor.k1_reduces", k1)
    for k in ks:
        rec.run("tensor.projective_relation",
                lambda k=k: (lambda d: (not d, len(d), 0, len(d)))(TensorRep(rep, k).rep().projective_defects()))
        talg = tensor_commutant(rep, k, H)
        rec.run("tensor.dimension", lambda k=k, talg=talg: (talg.dimension == n_cosets * k * k, None,
                                                             n_cosets * k * k, talg.dimension))
        if T is None:
            continue
        samples = [talg.random_element(rng) for _ in range(5)]

        def blockdiag(k=k, samples=samples):
            worst = max(block_diagonal_residual(tensor_transport(T.V, k, A), k) for A in samples)
            return worst < TOL, worst, 0, k
        rec.run("tensor.block_diagonal", blockdiag)

        def rebuild(k=k, samples=samples):
            worst = 0.0
            for A in samples:
                M = tensor_transport(T.V, k, A)
                Vk = np.kron(T.V, np.eye(k))
                back = Vk.conj().T @ from_blocks(blocks_of(M, k)) @ Vk
                worst = max(worst, float(np.linalg.norm(back - A)))
            return worst < TOL, worst, 0, k
        rec.run("tensor.block_round_trip", rebuild)


# -- driver --------------------------------------------------------------------

def verify_space(spec: str, convention: str = Convention.PAPER_MATRIX.value, seed: int = 0,
                 tensor_ks: Sequence[int] = DEFAULT_TENSOR_KS,
                 fixtures: dict | None = None) -> list[VerificationReport]:
    """Run every check on one standard phase space; returns the space case then subgroup cases."""
    fixtures = fixture_module.FIXTURES if fixtures is None else fixtures
    G = parse_group_spec(spec)
    ps = PhaseSpace.standard(G, convention)
    rep = schrodinger_rep(ps)
    subgroups = enumerate_subgroups(ps.xi)
    lags = {H.indices for H in enumerate_lagrangians(ps)}
    reports = []

    t0 = time.perf_counter()
    space_report = VerificationReport(G.spec(), convention, None, seed=seed)
    rec = _Recorder(space_report)
    _group_checks(rec, ps, subgroups)
    _weyl_checks(rec, ps, rep, _rng(seed, (G.spec(), convention, "weyl")))
    if G.spec() in fixtures and convention == Convention.PAPER_MATRIX.value:
        _fixture_checks(rec, ps, rep, fixtures[G.spec()])
    space_report.timing = time.perf_counter() - t0
    reports.append(space_report)

    for H in subgroups:
        t0 = time.perf_counter()
        label = _fmt_elements(H.elements)
        report = VerificationReport(G.spec(), convention, label, seed=seed)
        rec = _Recorder(report)
        rng = _rng(seed, (G.spec(), convention, label))
        alg = _subgroup_checks(rec, ps, rep, H)
        if H.indices in lags:
            try:
                space = CovariantSpace(ps, H)
            except Exception as exc:  # noqa: BLE001
                rec.add("canonical.phi_functional", False, None, None, f"{type(exc).__name__}: {exc}")
            else:
                _canonical_checks(rec, ps, H, space, rng)
                T = _gelfand_checks(rec, ps, rep, H, alg, space, seed, rng)
                _tensor_checks(rec, ps, rep, H, alg, T, tensor_ks, rng)
        report.timing = time.perf_counter() - t0
        reports.append(report)
    return reports


def run_verify(specs: Sequence[str] | str = BATTERY, seed: int = 0,
               convention: str = Convention.PAPER_MATRIX.value,
               tensor_ks: Sequence[int] = DEFAULT_TENSOR_KS,
               fixtures: dict | None = None) -> list[VerificationReport]:
    if isinstance(specs, str):
        specs = BATTERY if specs == "battery" else [specs]
    reports = []
    for spec in specs:
        reports.extend(verify_space(spec, convention, seed, tensor_ks, fixtures))
    return sorted(reports, key=lambda r: r.key)


def exit_code(reports: Sequence[VerificationReport]) -> int:
    checks = [c for r in reports for c in r.checks]
    if any(c.status == "fail" and c.kind == "fixture" for c in checks):
        return EXIT_FIXTURE
    if any(c.status == "fail" for c in checks):
        return EXIT_INVARIANT
    if any(c.status == "degenerate" for c in checks):
        return EXIT_DEGENERACY
    return EXIT_OK


def report_json(reports: Sequence[VerificationReport], seed: int) -> str:
    checks = [c for r in reports for c in r.checks]
    payload = {
        "schema": SCHEMA,
        "seed": seed,
        "summary": {
            "cases": len(reports),
            "checks": len(checks),
            "failed": sum(c.status == "fail" for c in checks),
            "degenerate": sum(c.status == "degenerate" for c in checks),
            "exit_code": exit_code(reports),
        },
        "cases": [r.to_json() for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def report_text(reports: Sequence[VerificationReport]) -> str:
    lines = []
    by_group: dict[str, list[VerificationReport]] = {}
    for r in reports:
        by_group.setdefault(r.group, []).append(r)
    for group, rs in by_group.items():
        checks = [c for r in rs for c in r.checks]
        failed = [(r, c) for r in rs for c in r.checks if c.status != "pass"]
        lines.append(f"Z{group.replace('x', 'xZ')}: {len(rs) - 1} subgroups, {len(checks)} checks, "
                     f"{len(failed)} not passing, {sum(r.timing for r in rs):.2f}s")
        for r, c in failed:
            lines.append(f"  {c.status.upper()} {c.name} [{r.subgroup or 'space'}]: "
                         f"expected {c.expected}, got {c.actual}")
    lines.append(f"exit code {exit_code(reports)}")
    return "\n".join(lines)
