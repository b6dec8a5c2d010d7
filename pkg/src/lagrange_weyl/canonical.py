"""The canonical representation attached to a Lagrangian subgroup H.

L^2(Xi//H) is the space of functions f on Xi with
    f(x + h) = conj(alpha(h) m(h, x)) f(x),
which is |Xi/H|-dimensional.  Its basis vector b_c is supported on the coset
c, equals 1 at the coset representative gamma(c) and equals Phi elsewhere on
c, so in the b_c coordinates the unitary A_Phi is the identity.  The
``ambient_*`` helpers realize the same objects inside C^Xi so that the
conjugation A_Phi^* U_x A_Phi can be computed independently of the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .exact import ExactMatrix
from .groups import QuotientData, Subgroup, quotient
from .modular import solve_mod
from .phase_space import Multiplier, PhaseSpace, is_isotropic, is_lagrangian
from .torus import TorusExponent, lcm
from .weyl import ExactUnitary, ProjectiveRep


class NotIsotropicError(ValueError):
    """m is not symmetric on H, so it cannot be a coboundary there."""


class InvariantViolation(RuntimeError):
    """An identity that holds for every valid input failed: a bug signal."""


@dataclass(frozen=True, eq=False)
class AlphaMap:
    """alpha: H -> T with m(h, h') = alpha(h + h') / (alpha(h) alpha(h')), alpha(0) = 1."""

    subgroup: Subgroup
    exps: tuple[int, ...]  # aligned with subgroup.elements
    modulus: int

    def __call__(self, h: Sequence[int]) -> TorusExponent:
        return TorusExponent(self.exps[self._pos[self.subgroup.parent.index(h)]], self.modulus)

    @property
    def _pos(self) -> dict[int, int]:
        xi = self.subgroup.parent
        return {xi.index(h): i for i, h in enumerate(self.subgroup.elements)}

    def table(self) -> dict[int, int]:
        """Xi-index of h -> exponent of alpha(h) over ``modulus``."""
        xi = self.subgroup.parent
        return {xi.index(h): e for h, e in zip(self.subgroup.elements, self.exps)}


def _coboundary_system(m: Multiplier, H: Subgroup, modulus: int):
    xi = m.xi
    idx = [xi.index(h) for h in H.elements]
    pos = {i: k for k, i in enumerate(idx)}
    mu = m.lifted(modulus)
    add = xi.add_table
    A, b = [], []
    for i in idx:
        for j in idx:
            row = [0] * len(idx)
            row[pos[int(add[i, j])]] += 1
            row[pos[i]] -= 1
            row[pos[j]] -= 1
            A.append(row)
            b.append(int(mu[i, j]))
    return A, b


def alpha_solutions(m: Multiplier, H: Subgroup) -> tuple[int, list[tuple[int, ...]]]:
    """(modulus, all exponent vectors) at the first modulus M, 2M, ... that admits one."""
    if not _symmetric_on(m, H):
        raise NotIsotropicError(f"m is not symmetric on {H}")
    M = m.modulus
    for k in range(1, H.exponent + 1):
        Mk = k * M
        A, b = _coboundary_system(m, H, Mk)
        sol = solve_mod(A, b, Mk)
        if sol is not None:
            return Mk, sol.all()
    raise InvariantViolation(f"no alpha solves the coboundary equation on {H} up to modulus {M * H.exponent}")


def alpha_solutions_brute_force(m: Multiplier, H: Subgroup, modulus: int,
                                limit: int = 300_000) -> list[tuple[int, ...]] | None:
    """Every alpha over ``modulus`` by exhaustion, or None when there are too many tuples."""
    n = H.order
    if modulus ** (n - 1) > limit:
        return None
    A, b = _coboundary_system(m, H, modulus)
    zero_pos = H.elements.index(H.parent.zero)
    grids = np.indices((modulus,) * (n - 1)).reshape(n - 1, -1).T
    tuples = np.insert(grids, zero_pos, 0, axis=1)
    ok = np.all((tuples @ np.array(A).T - np.array(b)) % modulus == 0, axis=1)
    return [tuple(int(v) for v in row) for row in tuples[ok]]


def _symmetric_on(m: Multiplier, H: Subgroup) -> bool:
    idx = sorted(H.indices)
    sub = m.table[np.ix_(idx, idx)]
    return bool(np.all((sub - sub.T) % m.modulus == 0))


def trivialize_on_H(m: Multiplier, H: Subgroup, choice: int = 0) -> AlphaMap:
    """The ``choice``-th (lexicographic) alpha trivializing m on H; 0 is lex-least."""
    modulus, sols = alpha_solutions(m, H)
    if not 0 <= choice < len(sols):
        raise IndexError(f"alpha choice {choice} out of range ({len(sols)} solutions)")
    return AlphaMap(H, sols[choice], modulus)


def coboundary_defects(m: Multiplier, alpha: AlphaMap) -> list[tuple[int, int]]:
    N = lcm(m.modulus, alpha.modulus)
    mu = m.lifted(N)
    a = {i: e * (N // alpha.modulus) for i, e in alpha.table().items()}
    add = m.xi.add_table
    bad = []
    for i in a:
        for j in a:
            if (a[int(add[i, j])] - a[i] - a[j] - mu[i, j]) % N:
                bad.append((i, j))
    return bad


@dataclass(frozen=True, eq=False)
class PhiMap:
    """Phi over Xi as exponents over ``modulus``; Phi(gamma(c)) = 1."""

    exps: np.ndarray
    modulus: int
    alpha: AlphaMap
    quotient: QuotientData

    def __call__(self, x: Sequence[int]) -> TorusExponent:
        return TorusExponent(int(self.exps[self.quotient.parent.index(x)]), self.modulus)

    def at(self, i: int) -> TorusExponent:
        return TorusExponent(int(self.exps[i]), self.modulus)


def phi_functional_defects(m: Multiplier, phi: PhiMap) -> list[tuple[int, int]]:
    """(x, h) with Phi(x + h) * alpha(h) * m(h, x) != Phi(x)."""
    N = phi.modulus
    mu = m.lifted(N)
    a = {i: e * (N // phi.alpha.modulus) for i, e in phi.alpha.table().items()}
    add = m.xi.add_table
    bad = []
    for x in range(m.xi.order):
        for h, ah in a.items():
            if (phi.exps[add[x, h]] + ah + mu[h, x] - phi.exps[x]) % N:
                bad.append((x, h))
    return bad


def phi_map(ps: PhaseSpace, H: Subgroup, alpha: AlphaMap, q: QuotientData) -> PhiMap:
    """Phi(x) = conj(alpha(x - g) m(x - g, g)) with g = gamma(x + H)."""
    xi = ps.xi
    N = lcm(ps.modulus, alpha.modulus)
    mu = ps.multiplier.lifted(N)
    a = {i: e * (N // alpha.modulus) for i, e in alpha.table().items()}
    exps = np.zeros(xi.order, dtype=np.int64)
    for i, x in enumerate(xi.elements):
        g = q.rep_of(x)
        d = xi.index(xi.sub(x, g))
        exps[i] = -(a[d] + mu[d, xi.index(g)]) % N
    phi = PhiMap(exps, N, alpha, q)
    bad = phi_functional_defects(ps.multiplier, phi)
    if bad:
        raise InvariantViolation(f"Phi functional equation fails at {len(bad)} pairs")
    return phi


class CovariantSpace:
    """L^2(Xi//H) in the coset basis b_c, for a Lagrangian H."""

    def __init__(self, ps: PhaseSpace, H: Subgroup, alpha: AlphaMap | None = None,
                 alpha_choice: int = 0, check_lagrangian: bool = True):
        if check_lagrangian and not is_lagrangian(ps, H):
            raise ValueError(f"{H} is not Lagrangian")
        self.ps = ps
        self.H = H
        self.alpha = alpha if alpha is not None else trivialize_on_H(ps.multiplier, H, alpha_choice)
        self.quotient = quotient(ps.xi, H)
        self.phi = phi_map(ps, H, self.alpha, self.quotient)
        self.modulus = self.phi.modulus
        self._mu = ps.multiplier.lifted(self.modulus)
        self._alpha_exp = {i: e * (self.modulus // self.alpha.modulus)
                           for i, e in self.alpha.table().items()}
        self._reps = [ps.xi.index(g) for g in self.quotient.coset_reps]

    @property
    def dim(self) -> int:
        return len(self.quotient)

    def basis_function(self, c: int) -> dict[int, TorusExponent]:
        """b_c as {Xi-index: value} on its support."""
        return {int(i): self.phi.at(int(i)) for i in np.flatnonzero(self.quotient.labels == c)}

    def covariance_factor(self, h: int, x: int) -> int:
        """Exponent of conj(alpha(h) m(h, x)) in f(x + h) = ... f(x)."""
        return -(self._alpha_exp[h] + self._mu[h, x]) % self.modulus

    def covariance_defects(self) -> list[tuple[int, int, int]]:
        """(x, h, h') where extending over h then h' differs from extending over h + h'."""
        add = self.ps.xi.add_table
        N = self.modulus
        bad = []
        hs = sorted(self.H.indices)
        for x in range(self.ps.xi.order):
            for h in hs:
                for h2 in hs:
                    two = self.covariance_factor(h, x) + self.covariance_factor(h2, int(add[x, h]))
                    one = self.covariance_factor(int(add[h, h2]), x)
                    if (two - one) % N:
                        bad.append((x, h, h2))
        return bad

    def basis_defects(self) -> list[int]:
        """Points where some b_c violates the covariance rule."""
        add = self.ps.xi.add_table
        bad = []
        for x in range(self.ps.xi.order):
            for h in self.H.indices:
                if (self.phi.exps[add[x, h]] - self.covariance_factor(h, x) - self.phi.exps[x]) % self.modulus:
                    bad.append(x)
                    break
        return bad

    # -- operators in the coset basis -------------------------------------
    def weyl_matrix(self, x) -> ExactUnitary:
        """U_x f(t) = m(t, x) f(t + x) in the b_c basis."""
        xi = self.ps.xi
        xi_idx = x if isinstance(x, (int, np.integer)) else xi.index(x)
        add = xi.add_table
        labels = self.quotient.labels
        rows = np.empty(self.dim, dtype=np.int64)
        phases = np.empty(self.dim, dtype=np.int64)
        for r, t in enumerate(self._reps):
            s = int(add[t, xi_idx])
            c = int(labels[s])
            rows[c] = r
            phases[c] = self._mu[t, xi_idx] + self.phi.exps[s]
        return ExactUnitary(rows, phases, self.modulus)

    def rep(self) -> ProjectiveRep:
        mats = [self.weyl_matrix(i) for i in range(self.ps.xi.order)]
        return ProjectiveRep(self.ps.xi, self.ps.multiplier, mats,
                             label=f"canonical({self.ps.G}, H={self.H})")

    def a_phi_closed_form(self, x) -> ExactUnitary:
        """A_Phi^* U_x A_Phi on L^2(Xi/H): f(t+H) -> Phi(t+x)/Phi(t) m(t,x) f(t+x+H)."""
        xi = self.ps.xi
        xi_idx = x if isinstance(x, (int, np.integer)) else xi.index(x)
        add = xi.add_table
        rows = np.empty(self.dim, dtype=np.int64)
        phases = np.empty(self.dim, dtype=np.int64)
        for r, t in enumerate(self._reps):
            s = int(add[t, xi_idx])
            c = int(self.quotient.labels[s])
            rows[c] = r
            phases[c] = self.phi.exps[s] - self.phi.exps[t] + self._mu[t, xi_idx]
        return ExactUnitary(rows, phases, self.modulus)

    def action_invariance_defects(self, x) -> list[int]:
        """t where Phi(t+x)/Phi(t) m(t,x) differs from its value at gamma(t+H)."""
        xi = self.ps.xi
        xi_idx = x if isinstance(x, (int, np.integer)) else xi.index(x)
        add = xi.add_table
        N = self.modulus
        vals = (self.phi.exps[add[:, xi_idx]] - self.phi.exps + self._mu[:, xi_idx]) % N
        rep_vals = vals[np.array(self._reps)][self.quotient.labels]
        return [int(t) for t in np.flatnonzero((vals - rep_vals) % N)]

    def diagonal_h_action(self, h) -> ExactUnitary:
        """(1/alpha(h)) sigma(t + H, h) on the diagonal."""
        xi = self.ps.xi
        h_idx = h if isinstance(h, (int, np.integer)) else xi.index(h)
        if h_idx not in self.H.indices:
            raise ValueError("h must lie in H")
        N = self.modulus
        sigma = (self._mu - self._mu.T) % N
        phases = np.array([-self._alpha_exp[h_idx] + sigma[t, h_idx] for t in self._reps])
        return ExactUnitary(np.arange(self.dim), phases, N)

    # -- the same objects inside C^Xi -------------------------------------
    def ambient_weyl_matrix(self, x) -> ExactUnitary:
        """(U_x f)(t) = m(t, x) f(t + x) acting on all functions on Xi."""
        xi = self.ps.xi
        xi_idx = x if isinstance(x, (int, np.integer)) else xi.index(x)
        add = xi.add_table
        n = xi.order
        rows = np.empty(n, dtype=np.int64)
        phases = np.empty(n, dtype=np.int64)
        for t in range(n):
            s = int(add[t, xi_idx])
            rows[s] = t
            phases[s] = self._mu[t, xi_idx]
        return ExactUnitary(rows, phases, self.modulus)

    def a_phi(self) -> ExactMatrix:
        """A_Phi f(x) = Phi(x) f(x + H), as an |Xi| x |Xi/H| matrix."""
        entries = {(x, int(self.quotient.labels[x])): Cyclotomic.root(int(self.phi.exps[x]), self.modulus)
                   for x in range(self.ps.xi.order)}
        return ExactMatrix((self.ps.xi.order, self.dim), entries)

    def a_phi_adjoint(self) -> ExactMatrix:
        # inner product on L^2(Xi//H) is the coset sum = (1/|H|) * sum over Xi
        return self.a_phi().adjoint().scaled(Fraction(1, self.H.order))

    def a_phi_conjugation(self, x) -> ExactMatrix:
        A = self.a_phi()
        U = ExactMatrix.from_unitary(self.ambient_weyl_matrix(x))
        return self.a_phi_adjoint() @ (U @ A)

    def multiplication_operator(self, f: Sequence[complex]) -> np.ndarray:
        """M_f for f on Xi/H, acting on L^2(Xi//H) in the b_c basis (numeric)."""
        return np.diag(np.asarray(f, dtype=complex))

    def ambient_multiplication_norm(self, f: Sequence[complex]) -> float:
        """Operator norm of g -> f(x+H) g(x) restricted to L^2(Xi//H), computed in C^Xi."""
        A = self.a_phi().to_dense() / math.sqrt(self.H.order)
        Mf = np.diag(np.asarray(f, dtype=complex)[self.quotient.labels])
        return float(np.linalg.norm(Mf @ A, 2))
