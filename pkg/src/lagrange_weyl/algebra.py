"""Commutants, spans, Gelfand spectra and transforms, intertwiners.

Operators here are complex float matrices.  Subspaces of operators use the
trace inner product <A, B> = tr(A^* B), i.e. the standard inner product of
row-major vectorizations.  Rank decisions threshold singular values at
``RTOL`` times the largest one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .canonical import CovariantSpace
from .groups import GroupElement, Subgroup
from .phase_space import PhaseSpace
from .weyl import ExactUnitary, ProjectiveRep, schrodinger_rep

RTOL = 1e-9
TOL = 1e-9


class PreconditionError(ValueError):
    pass


class DegeneracyError(RuntimeError):
    """Joint diagonalization did not converge at tolerance."""


class TheoremViolation(RuntimeError):
    """A transported operator is not of the predicted form."""


class InequivalentRepresentationsError(ValueError):
    pass


def nullspace(A: np.ndarray, rtol: float = RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal columns spanning ker A, and the singular values of A."""
    A = np.atleast_2d(A)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=complex), np.zeros(0)
    _, s, vh = np.linalg.svd(A)
    tol = rtol * s[0] if s.size and s[0] > 0 else rtol
    rank = int((s > tol).sum())
    return vh[rank:].conj().T, s


def orthonormal_span(mats: Sequence[np.ndarray], rtol: float = RTOL) -> list[np.ndarray]:
    if not mats:
        return []
    d = mats[0].shape[0]
    X = np.array([np.asarray(M, dtype=complex).reshape(-1) for M in mats])
    _, s, vh = np.linalg.svd(X, full_matrices=False)
    if not s.size or s[0] == 0:
        return []
    rank = int((s > rtol * s[0]).sum())
    return [vh[i].reshape(d, d) for i in range(rank)]


@dataclass
class OperatorAlgebra:
    dim: int
    basis: list[np.ndarray]
    provenance: str = "span-of-set"
    margin: float = float("inf")  # smallest kept / largest dropped singular value

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def _frame(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.dim * self.dim), dtype=complex)
        return np.array([B.reshape(-1) for B in self.basis])

    def project(self, A: np.ndarray) -> np.ndarray:
        F = self._frame()
        v = np.asarray(A, dtype=complex).reshape(-1)
        return (F.T @ (F.conj() @ v)).reshape(self.dim, self.dim)

    def coordinates(self, A: np.ndarray) -> np.ndarray:
        return self._frame().conj() @ np.asarray(A, dtype=complex).reshape(-1)

    def from_coordinates(self, c: np.ndarray) -> np.ndarray:
        return (self._frame().T @ np.asarray(c)).reshape(self.dim, self.dim)

    def residual(self, A: np.ndarray) -> float:
        A = np.asarray(A, dtype=complex)
        return float(np.linalg.norm(A - self.project(A)) / max(1.0, np.linalg.norm(A)))

    def contains(self, A: np.ndarray, tol: float = TOL) -> bool:
        return self.residual(A) < tol

    def subspace_residual(self, other: OperatorAlgebra) -> float:
        """Max of the mutual projection residuals (inf when dimensions differ)."""
        if self.dimension != other.dimension:
            return float("inf")
        r1 = max((other.residual(B) for B in self.basis), default=0.0)
        r2 = max((self.residual(B) for B in other.basis), default=0.0)
        return max(r1, r2)

    def closure_residual(self) -> float:
        worst = 0.0
        for B in self.basis:
            worst = max(worst, self.residual(B.conj().T))
            for C in self.basis:
                worst = max(worst, self.residual(B @ C))
        return worst

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        c = rng.standard_normal(self.dimension) + 1j * rng.standard_normal(self.dimension)
        return self.from_coordinates(c)


def commutant_basis(unitaries: Sequence[np.ndarray], dim: int,
                    provenance: str = "commutant") -> OperatorAlgebra:
    """{A : U A = A U for every listed U} as an orthonormal basis."""
    eye = np.eye(dim)
    blocks = []
    for U in unitaries:
        U = np.asarray(U, dtype=complex)
        # row-major vec: vec(UA) = (U (x) I) vec(A), vec(AU) = (I (x) U^T) vec(A)
        blocks.append(np.kron(U, eye) - np.kron(eye, U.T))
    if not blocks:
        blocks.append(np.zeros((0, dim * dim)))
    N, s = nullspace(np.vstack(blocks))
    basis = [N[:, i].reshape(dim, dim) for i in range(N.shape[1])]
    rank = dim * dim - len(basis)
    margin = float("inf")
    if s.size and s[0] > 0 and 0 < rank < len(s):
        margin = float(s[rank - 1] / max(s[rank], 1e-300))
    return OperatorAlgebra(dim, basis, provenance, margin)


def _dense(U) -> np.ndarray:
    return U.to_dense() if isinstance(U, ExactUnitary) else np.asarray(U, dtype=complex)


def subgroup_commutant(rep: ProjectiveRep, H: Subgroup) -> OperatorAlgebra:
    """L(H)_H: the commutant of {U_h : h in generators of H}."""
    gens = [rep.dense(h) for h in H.generators]
    return commutant_basis(gens, rep.dim, provenance="commutant-of-H")


def span_basis(rep: ProjectiveRep, S: Subgroup) -> OperatorAlgebra:
    mats = [rep.dense(x) for x in S.elements]
    return OperatorAlgebra(rep.dim, orthonormal_span(mats), "span-of-set")


def is_commutative(alg: OperatorAlgebra, tol: float = TOL) -> bool:
    return commutator_residual(alg) < tol


def commutator_residual(alg: OperatorAlgebra) -> float:
    worst = 0.0
    for i, B in enumerate(alg.basis):
        for C in alg.basis[i + 1:]:
            worst = max(worst, float(np.linalg.norm(B @ C - C @ B)))
    return worst


def double_commutant(alg: OperatorAlgebra) -> OperatorAlgebra:
    return commutant_basis(alg.basis, alg.dim, provenance="double-commutant")


def is_maximal_abelian(alg: OperatorAlgebra, tol: float = TOL) -> bool:
    """Commutative and equal to its own commutant."""
    return is_commutative(alg, tol) and double_commutant(alg).subspace_residual(alg) < tol


# -- Gelfand spectrum --------------------------------------------------------

@dataclass
class GelfandData:
    """Characters of a commutative *-algebra from a joint eigenframe.

    ``characters[k][i]`` is the value of character k on basis element i;
    ``vectors[k]`` is a unit joint eigenvector realizing character k.
    """

    characters: list[np.ndarray]
    vectors: list[np.ndarray]
    frame: np.ndarray
    residual: float
    seed: int
    attempts: int
    point_labels: list[GroupElement] | None = None
    multiplicities: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.characters)

    def evaluate(self, k: int, A: np.ndarray) -> complex:
        p = self.vectors[k]
        return complex(p.conj() @ np.asarray(A) @ p)


def _generic_selfadjoint(mats: Sequence[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    X = np.zeros_like(mats[0], dtype=complex)
    for B in mats:
        r, s = rng.standard_normal(2)
        X += r * (B + B.conj().T) / 2 + s * (B - B.conj().T) / 2j
    return X


def _split(Q: np.ndarray, mats: Sequence[np.ndarray], rng: np.random.Generator, depth: int = 0) -> list[np.ndarray]:
    """Split the column space of Q into joint eigenspaces of ``mats``."""
    k = Q.shape[1]
    restricted = [Q.conj().T @ B @ Q for B in mats]
    if k == 1 or all(np.linalg.norm(R - np.trace(R) / k * np.eye(k)) < TOL for R in restricted):
        return [Q]
    if depth > 8:
        raise DegeneracyError("joint eigenspaces did not separate")
    w, P = np.linalg.eigh(_generic_selfadjoint(restricted, rng))
    scale = max(1.0, float(np.max(np.abs(w))))
    groups, start = [], 0
    for i in range(1, k + 1):
        if i == k or w[i] - w[i - 1] > 1e-7 * scale:
            groups.append(slice(start, i))
            start = i
    out = []
    for g in groups:
        out.extend(_split(Q @ P[:, g], mats, rng, depth + 1))
    return out


def gelfand_spectrum(alg: OperatorAlgebra, seed: int = 0, max_attempts: int = 5) -> GelfandData:
    if not is_commutative(alg):
        raise PreconditionError("gelfand_spectrum needs a commutative algebra")
    if alg.closure_residual() >= TOL:
        raise PreconditionError("algebra is not closed under products and adjoints")
    mats = alg.basis or [np.eye(alg.dim, dtype=complex)]
    last = None
    for attempt in range(max_attempts):
        rng = np.random.default_rng(seed + attempt)
        try:
            blocks = _split(np.eye(alg.dim, dtype=complex), mats, rng)
        except DegeneracyError as exc:
            last = exc
            continue
        frame = np.hstack(blocks)
        residual = max(float(np.linalg.norm(frame.conj().T @ B @ frame
                                            - np.diag(np.diag(frame.conj().T @ B @ frame))))
                       for B in mats)
        if residual >= TOL:
            last = DegeneracyError(f"off-diagonal residual {residual:.2e} after attempt {attempt}")
            continue
        chars: list[np.ndarray] = []
        vecs: list[np.ndarray] = []
        mult: list[int] = []
        for Q in blocks:
            p = Q[:, 0]
            val = np.array([p.conj() @ B @ p for B in alg.basis])
            for k, c in enumerate(chars):
                if np.linalg.norm(c - val) < 1e-7:
                    mult[k] += Q.shape[1]
                    break
            else:
                chars.append(val)
                vecs.append(p)
                mult.append(Q.shape[1])
        order = sorted(range(len(chars)), key=lambda k: [
            (round(float(z.real), 9), round(float(z.imag), 9)) for z in chars[k]])
        return GelfandData([chars[k] for k in order], [vecs[k] for k in order], frame, residual,
                           seed + attempt, attempt + 1, multiplicities=[mult[k] for k in order])
    raise DegeneracyError(f"no joint diagonal frame after {max_attempts} seeds: {last}")


# -- intertwiners ------------------------------------------------------------

def _dense_family(rep) -> list[np.ndarray]:
    if isinstance(rep, ProjectiveRep):
        return rep.dense_all()
    return [_dense(U) for U in rep]


def intertwiner(rep1, rep2) -> tuple[np.ndarray | None, int]:
    """Solve V U_x = U'_x V for all x; normalize V when the solution is unique up to scale."""
    A, B = _dense_family(rep1), _dense_family(rep2)
    if len(A) != len(B):
        raise PreconditionError("representations are indexed by different groups")
    d1, d2 = A[0].shape[0], B[0].shape[0]
    if d1 != d2:
        raise PreconditionError(f"dimension mismatch {d1} vs {d2}")
    I1, I2 = np.eye(d1), np.eye(d2)
    # V is d2 x d1, row-major: vec(V U) = (I (x) U^T) vec(V), vec(U' V) = (U' (x) I) vec(V)
    system = np.vstack([np.kron(I2, U.T) - np.kron(Up, I1) for U, Up in zip(A, B)])
    N, _ = nullspace(system)
    k = N.shape[1]
    if k == 0:
        raise InequivalentRepresentationsError("no nonzero intertwiner: multipliers differ")
    if k > 1:
        return None, k
    V = N[:, 0].reshape(d2, d1)
    V = V / np.sqrt(np.real(np.trace(V.conj().T @ V)) / d1)
    col = V[:, 0]
    nz = np.flatnonzero(np.abs(col) > 1e-9)
    if nz.size:
        z = col[nz[0]]
        V = V * (abs(z) / z)
    return V, 1


# -- the Gelfand transform ---------------------------------------------------

class GelfandTransform:
    """A -> f on Xi/H with V A V^* = M_f, for A in the commutant of {U_h : h in H}.

    V is the Stone-von Neumann intertwiner from ``rep`` to the canonical
    representation on L^2(Xi//H).  In the b_c coordinates used by
    :class:`CovariantSpace` the unitary A_Phi is the identity, so the
    transported matrix is read directly as an operator on L^2(Xi/H).
    """

    def __init__(self, ps: PhaseSpace, H: Subgroup, rep: ProjectiveRep | None = None,
                 alpha_choice: int = 0, space: CovariantSpace | None = None):
        self.ps = ps
        self.H = H
        self.rep = rep if rep is not None else schrodinger_rep(ps)
        self.space = space if space is not None else CovariantSpace(ps, H, alpha_choice=alpha_choice)
        self.canonical = self.space.rep()
        V, k = intertwiner(self.rep, self.canonical)
        if k != 1 or V is None:
            raise TheoremViolation(f"intertwiner space has dimension {k}, expected 1")
        self.V = V
        self.commutant = subgroup_commutant(self.rep, H)

    @property
    def point_labels(self) -> list[GroupElement]:
        return list(self.space.quotient.coset_reps)

    def transport(self, A: np.ndarray) -> np.ndarray:
        return self.V @ np.asarray(A, dtype=complex) @ self.V.conj().T

    def __call__(self, A: np.ndarray, check: bool = True) -> np.ndarray:
        A = np.asarray(A, dtype=complex)
        if check:
            r = self.commutant.residual(A)
            if r >= TOL:
                raise PreconditionError(f"operator is not in the commutant of H (residual {r:.2e})")
        T = self.transport(A)
        off = float(np.linalg.norm(T - np.diag(np.diag(T))))
        if off >= TOL * max(1.0, float(np.linalg.norm(A))):
            raise TheoremViolation(f"transported operator is not diagonal (residual {off:.2e})")
        return np.diag(T).copy()

    def inverse(self, f: Sequence[complex]) -> np.ndarray:
        return self.V.conj().T @ np.diag(np.asarray(f, dtype=complex)) @ self.V

    def shift(self, f: np.ndarray, z) -> np.ndarray:
        """t + H -> f(t + z + H)."""
        xi = self.ps.xi
        q = self.space.quotient
        z = xi.element(z) if isinstance(z, (int, np.integer)) else z
        return np.array([f[q.index_of(xi.add(t, z))] for t in q.coset_reps])


def gelfand_transform(ps: PhaseSpace, H: Subgroup, A: np.ndarray) -> np.ndarray:
    return GelfandTransform(ps, H)(A)


def label_spectrum(data: GelfandData, transform: GelfandTransform, alg: OperatorAlgebra) -> GelfandData:
    """Attach coset labels to characters by matching against the transform of the basis."""
    values = np.array([transform(B, check=False) for B in alg.basis])  # basis x cosets
    labels: list[GroupElement] = []
    for chi in data.characters:
        d = np.linalg.norm(values - chi[:, None], axis=0)
        labels.append(transform.point_labels[int(np.argmin(d))])
    data.point_labels = labels
    return data


# -- operator-valued case ----------------------------------------------------

class TensorRep:
    """U'_x = U_x (x) I_k, basis index (i, j) -> i*k + j."""

    def __init__(self, base: ProjectiveRep, k: int):
        if k < 1:
            raise PreconditionError("multiplicity must be >= 1")
        self.base = base
        self.k = k
        self.dim = base.dim * k

    def __getitem__(self, x) -> ExactUnitary:
        return self.base[x].kron_identity(self.k)

    def rep(self) -> ProjectiveRep:
        return ProjectiveRep(self.base.xi, self.base.multiplier,
                             [U.kron_identity(self.k) for U in self.base.matrices],
                             label=f"{self.base.label}(x)I{self.k}")


def tensor_commutant(rep: ProjectiveRep, k: int, H: Subgroup) -> OperatorAlgebra:
    t = TensorRep(rep, k)
    gens = [t[h].to_dense() for h in H.generators]
    return commutant_basis(gens, t.dim, provenance=f"commutant-of-H(x)I{k}")


def tensor_transport(V: np.ndarray, k: int, A: np.ndarray) -> np.ndarray:
    Vk = np.kron(V, np.eye(k))
    return Vk @ A @ Vk.conj().T


def block_diagonal_residual(M: np.ndarray, k: int) -> float:
    n = M.shape[0] // k
    mask = np.kron(np.eye(n), np.ones((k, k))).astype(bool)
    return float(np.linalg.norm(np.where(mask, 0, M)))


def blocks_of(M: np.ndarray, k: int) -> list[np.ndarray]:
    n = M.shape[0] // k
    return [M[c * k:(c + 1) * k, c * k:(c + 1) * k].copy() for c in range(n)]


def from_blocks(blocks: Sequence[np.ndarray]) -> np.ndarray:
    k = blocks[0].shape[0]
    n = len(blocks)
    out = np.zeros((n * k, n * k), dtype=complex)
    for c, F in enumerate(blocks):
        out[c * k:(c + 1) * k, c * k:(c + 1) * k] = F
    return out
