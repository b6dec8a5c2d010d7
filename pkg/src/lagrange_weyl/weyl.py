"""Exact Weyl (Schrodinger) representations on l^2(G).

Weyl operators are generalized permutation matrices with root-of-unity
entries, so they are stored as (row of the nonzero entry, phase exponent)
per column and multiplied exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import kernels
from .groups import Character, FiniteAbelianGroup, GroupElement, InputError
from .phase_space import Convention, Multiplier, PhaseSpace, PhaseSpaceError, standard_multiplier
from .torus import TorusExponent, lcm


class RepresentationError(ValueError):
    """U_x U_y is not a scalar multiple of U_{x+y}."""


@dataclass(frozen=True, eq=False)
class ExactUnitary:
    """Generalized permutation matrix: column c has ``e(phases[c]/modulus)`` in row ``rows[c]``."""

    rows: np.ndarray
    phases: np.ndarray
    modulus: int = 1

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=np.int64)
        phases = np.asarray(self.phases, dtype=np.int64) % self.modulus
        if sorted(rows.tolist()) != list(range(len(rows))):
            raise ValueError("rows must be a permutation: one nonzero per row and column")
        rows.setflags(write=False)
        phases.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "phases", phases)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, dim: int) -> ExactUnitary:
        return cls(np.arange(dim), np.zeros(dim, dtype=np.int64), 1)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[TorusExponent | int]]) -> ExactUnitary:
        """Build from a dense table whose entries are TorusExponent or 0."""
        dim = len(entries)
        rows = [-1] * dim
        vals: list[TorusExponent] = [TorusExponent.one()] * dim
        for r, row in enumerate(entries):
            if len(row) != dim:
                raise ValueError("matrix must be square")
            for c, v in enumerate(row):
                if isinstance(v, TorusExponent):
                    if rows[c] >= 0:
                        raise ValueError(f"column {c} has two nonzero entries")
                    rows[c], vals[c] = r, v
                elif v != 0:
                    raise ValueError(f"entry ({r},{c}) must be a TorusExponent or 0")
        M = lcm(1, *(v.modulus for v in vals))
        return cls(np.array(rows), np.array([v.over(M) for v in vals]), M)

    def over(self, modulus: int) -> np.ndarray:
        if modulus % self.modulus:
            raise ValueError(f"cannot write modulus {self.modulus} entries over {modulus}")
        return self.phases * (modulus // self.modulus)

    def entry(self, r: int, c: int) -> TorusExponent | None:
        if self.rows[c] != r:
            return None
        return TorusExponent(int(self.phases[c]), self.modulus)

    def __matmul__(self, other: ExactUnitary) -> ExactUnitary:
        if not isinstance(other, ExactUnitary):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        M = lcm(self.modulus, other.modulus)
        a, b = self.over(M), other.over(M)
        return ExactUnitary(self.rows[other.rows], a[other.rows] + b, M)

    def adjoint(self) -> ExactUnitary:
        rows = np.empty_like(self.rows)
        phases = np.empty_like(self.phases)
        rows[self.rows] = np.arange(self.dim)
        phases[self.rows] = -self.phases
        return ExactUnitary(rows, phases, self.modulus)

    def scaled(self, t: TorusExponent) -> ExactUnitary:
        M = lcm(self.modulus, t.modulus)
        return ExactUnitary(self.rows, self.over(M) + t.over(M), M)

    def ratio_to(self, other: ExactUnitary) -> TorusExponent | None:
        """The scalar c with self == c * other, or None."""
        if self.dim != other.dim or not np.array_equal(self.rows, other.rows):
            return None
        M = lcm(self.modulus, other.modulus)
        diff = (self.over(M) - other.over(M)) % M
        if self.dim and np.any(diff != diff[0]):
            return None
        return TorusExponent(int(diff[0]) if self.dim else 0, M)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactUnitary):
            return NotImplemented
        c = self.ratio_to(other)
        return c is not None and c.is_one

    __hash__ = None  # type: ignore[assignment]

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.rows, np.arange(self.dim)) and not np.any(self.phases))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        out[self.rows, np.arange(self.dim)] = [complex(TorusExponent(int(p), self.modulus))
                                               for p in self.phases]
        return out

    def kron_identity(self, k: int) -> ExactUnitary:
        """self (x) I_k with basis index (i, j) -> i*k + j."""
        rows = (self.rows[:, None] * k + np.arange(k)[None, :]).reshape(-1)
        return ExactUnitary(rows, np.repeat(self.phases, k), self.modulus)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [[int(r), c, *TorusExponent(int(p), self.modulus).to_json()]
                        for c, (r, p) in enumerate(zip(self.rows, self.phases))],
        }

    def __repr__(self) -> str:
        rows = []
        for r in range(self.dim):
            c = int(np.flatnonzero(self.rows == r)[0])
            rows.append(["0"] * self.dim)
            rows[-1][c] = str(TorusExponent(int(self.phases[c]), self.modulus))
        return "ExactUnitary(" + "; ".join(" ".join(row) for row in rows) + ")"


def dense_matrix_to_json(A: np.ndarray) -> dict:
    return {"dim": int(A.shape[0]), "dense": [[[float(z.real), float(z.imag)] for z in row] for row in A]}


def snap(z: complex, modulus: int, tol: float = 1e-9) -> TorusExponent | int:
    """Map a float near 0 or near a root of unity of order dividing ``modulus`` to exact form."""
    if abs(z) < tol:
        return 0
    k = round(cmath.phase(z) * modulus / (2 * math.pi)) % modulus
    t = TorusExponent(k, modulus)
    if abs(complex(t) - z) < tol:
        return t
    raise ValueError(f"{z} is not within {tol} of 0 or a {modulus}-th root of unity")


Element = Union[Sequence[int], tuple]


class ProjectiveRep:
    """A family x -> U_x of exact monomial unitaries indexed by the elements of ``xi``."""

    def __init__(self, xi: FiniteAbelianGroup, multiplier: Multiplier,
                 matrices: Sequence[ExactUnitary], label: str = ""):
        if len(matrices) != xi.order:
            raise ValueError("need one matrix per element of Xi")
        dims = {U.dim for U in matrices}
        if len(dims) != 1:
            raise ValueError("all matrices must share a dimension")
        self.xi = xi
        self.multiplier = multiplier
        self.matrices = list(matrices)
        self.dim = dims.pop()
        self.label = label
        self._dense: list[np.ndarray] | None = None

    def __getitem__(self, x) -> ExactUnitary:
        if isinstance(x, (int, np.integer)):
            return self.matrices[int(x)]
        return self.matrices[self.xi.index(x)]

    def dense(self, x) -> np.ndarray:
        if self._dense is None:
            self._dense = [U.to_dense() for U in self.matrices]
        if isinstance(x, (int, np.integer)):
            return self._dense[int(x)]
        return self._dense[self.xi.index(x)]

    def dense_all(self) -> list[np.ndarray]:
        self.dense(0)
        assert self._dense is not None
        return self._dense

    @property
    def modulus(self) -> int:
        return lcm(self.multiplier.modulus, *(U.modulus for U in self.matrices))

    def projective_defects(self) -> list[tuple[int, int]]:
        """Pairs (x, y) (as indices) with U_x U_y != m(x,y) U_{x+y}, checked exactly."""
        M = self.modulus
        rows = np.ascontiguousarray(np.stack([U.rows for U in self.matrices]))
        phases = np.ascontiguousarray(np.stack([U.over(M) for U in self.matrices]))
        table = np.ascontiguousarray(self.multiplier.lifted(M))
        bad = kernels.projective_defects(rows, phases, self.xi.add_table, table, M)
        return [(int(a), int(b)) for a, b in bad]

    def __repr__(self) -> str:
        return f"ProjectiveRep({self.label or self.xi}, dim={self.dim})"


def _weyl_convention(ps: PhaseSpace) -> Convention:
    if ps.convention in (c.value for c in Convention):
        return Convention(ps.convention)
    for conv in Convention:
        if ps.multiplier.equals(standard_multiplier(ps.G, conv)):
            return conv
    raise PhaseSpaceError("Weyl matrices are only defined for the standard multipliers on G x G^")


def _as_xi_element(ps: PhaseSpace, x) -> GroupElement:
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], Character):
        g, chi = x
        return ps.join(ps.G.check(g), chi.coords)
    if (isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple)
            and isinstance(x[1], tuple)):
        return ps.join(ps.G.check(x[0]), ps.G.check(x[1]))
    return ps.xi.check(x)


def weyl_matrix(ps: PhaseSpace, x) -> ExactUnitary:
    """U_(j,phi) e_c = phi(c) e_(c+j)  (conjugated phase for ``paper-stated``)."""
    conv = _weyl_convention(ps)
    j, phi = ps.split(_as_xi_element(ps, x))
    G = ps.G
    chi = Character(G, phi)
    rows, phases = [], []
    M = G.exponent
    for c in G.elements:
        rows.append(G.index(G.add(c, j)))
        p = chi(c).over(M)
        phases.append(p if conv is Convention.PAPER_MATRIX else -p)
    return ExactUnitary(np.array(rows), np.array(phases), M)


def schrodinger_rep(ps: PhaseSpace) -> ProjectiveRep:
    mats = [weyl_matrix(ps, x) for x in ps.xi.elements]
    return ProjectiveRep(ps.xi, ps.multiplier, mats, label=f"Schrodinger({ps.G})")


def derive_multiplier(rep: ProjectiveRep) -> Multiplier:
    """Read off m(x, y) from U_x U_y = m(x, y) U_{x+y}, exactly."""
    xi = rep.xi
    M = rep.modulus
    table = np.zeros((xi.order, xi.order), dtype=np.int64)
    add = xi.add_table
    for i in range(xi.order):
        for j in range(xi.order):
            c = (rep.matrices[i] @ rep.matrices[j]).ratio_to(rep.matrices[add[i, j]])
            if c is None:
                raise RepresentationError(
                    f"U_x U_y is not a multiple of U_(x+y) for x={xi.element(i)}, y={xi.element(j)}")
            table[i, j] = c.over(M)
    return Multiplier(xi, table, M)


def translation_action(rep: ProjectiveRep, z, A):
    """alpha_z(A) = U_z A U_z^*; exact for ExactUnitary input."""
    U = rep[z]
    if isinstance(A, ExactUnitary):
        return U @ A @ U.adjoint()
    A = np.asarray(A)
    if A.shape != (rep.dim, rep.dim):
        raise InputError(f"operator shape {A.shape} does not match dim {rep.dim}")
    Ud = rep.dense(z)
    return Ud @ A @ Ud.conj().T


def direct_sum(r1: ProjectiveRep, r2: ProjectiveRep) -> ProjectiveRep:
    if r1.xi != r2.xi:
        raise ValueError("representations of different groups")
    mats = []
    for A, B in zip(r1.matrices, r2.matrices):
        M = lcm(A.modulus, B.modulus)
        rows = np.concatenate([A.rows, B.rows + A.dim])
        mats.append(ExactUnitary(rows, np.concatenate([A.over(M), B.over(M)]), M))
    return ProjectiveRep(r1.xi, r1.multiplier, mats, label=f"{r1.label}+{r2.label}")


def trivial_rep() -> ProjectiveRep:
    """The one-dimensional representation of the trivial phase space."""
    xi = FiniteAbelianGroup(())
    m = Multiplier(xi, np.zeros((1, 1), dtype=np.int64), 1)
    return ProjectiveRep(xi, m, [ExactUnitary.identity(1)], label="trivial")


def is_irreducible(rep: ProjectiveRep) -> bool:
    from .algebra import commutant_basis

    return commutant_basis(rep.dense_all(), rep.dim).dimension == 1
