"""Multipliers on G x G^, the bicharacter sigma, and Lagrangian subgroups."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from .groups import (FiniteAbelianGroup, GroupElement, InputError, Subgroup,
                     enumerate_subgroups, subgroup_from_mask)
from .torus import TorusExponent, lcm


class Convention(str, Enum):
    # m((x,phi),(y,psi)) = phi(y): matches the printed example matrices
    PAPER_MATRIX = "paper-matrix"
    # m((x,phi),(y,psi)) = conj(phi(y))
    PAPER_STATED = "paper-stated"


class PhaseSpaceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Multiplier:
    """A multiplier on ``xi`` as a full exponent table over ``modulus``.

    ``table[i, j]`` is the numerator of m(x_i, x_j) with elements indexed in
    the lexicographic order of ``xi``.
    """

    xi: FiniteAbelianGroup
    table: np.ndarray
    modulus: int
    convention: str | None = None

    def __post_init__(self) -> None:
        t = np.ascontiguousarray(np.asarray(self.table, dtype=np.int64) % self.modulus)
        if t.shape != (self.xi.order, self.xi.order):
            raise InputError(f"multiplier table shape {t.shape} does not match |Xi| = {self.xi.order}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> TorusExponent:
        return TorusExponent(int(self.table[self.xi.index(x), self.xi.index(y)]), self.modulus)

    def at(self, i: int, j: int) -> TorusExponent:
        return TorusExponent(int(self.table[i, j]), self.modulus)

    @property
    def sigma_table(self) -> np.ndarray:
        return (self.table - self.table.T) % self.modulus

    def lifted(self, modulus: int) -> np.ndarray:
        if modulus % self.modulus:
            raise ValueError(f"cannot lift modulus {self.modulus} to {modulus}")
        return self.table * (modulus // self.modulus)

    def conjugate(self) -> Multiplier:
        return Multiplier(self.xi, -self.table, self.modulus)

    def with_entry(self, i: int, j: int, numerator: int) -> Multiplier:
        t = self.table.copy()
        t[i, j] = numerator
        return Multiplier(self.xi, t, self.modulus)

    def equals(self, other: Multiplier) -> bool:
        M = lcm(self.modulus, other.modulus)
        return self.xi == other.xi and bool(np.all((self.lifted(M) - other.lifted(M)) % M == 0))

    # -- serialization: [x-index, y-index, [numerator, modulus]] ------------
    def to_triples(self) -> list:
        out = []
        for i, j in zip(*np.nonzero(self.table)):
            out.append([int(i), int(j), TorusExponent(int(self.table[i, j]), self.modulus).to_json()])
        return out

    @classmethod
    def from_triples(cls, xi: FiniteAbelianGroup, triples: list) -> Multiplier:
        values = []
        for entry in triples:
            try:
                i, j, t = entry
                i, j = int(i), int(j)
            except (TypeError, ValueError):
                raise InputError(f"multiplier entry {entry!r} is not [x, y, exponent]") from None
            if not (0 <= i < xi.order and 0 <= j < xi.order):
                raise InputError(f"multiplier entry {entry!r} indexes outside |Xi| = {xi.order}")
            values.append((i, j, _parse_torus(t)))
        M = lcm(1, *(v.modulus for _, _, v in values))
        table = np.zeros((xi.order, xi.order), dtype=np.int64)
        for i, j, v in values:
            table[i, j] = v.over(M)
        return cls(xi, table, M)


def _parse_torus(t) -> TorusExponent:
    if isinstance(t, str):
        num, _, den = t.partition("/")
        try:
            return TorusExponent(int(num), int(den or 1))
        except ValueError:
            raise InputError(f"bad torus exponent {t!r}") from None
    if isinstance(t, (list, tuple)) and len(t) == 2:
        if int(t[1]) <= 0:
            raise InputError(f"bad torus modulus in {t!r}")
        return TorusExponent(int(t[0]), int(t[1]))
    raise InputError(f"bad torus exponent {t!r}")


def load_multiplier(path: str | Path, G: FiniteAbelianGroup) -> Multiplier:
    try:
        triples = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read multiplier file {path}: {exc}") from None
    if not isinstance(triples, list):
        raise InputError("multiplier file must hold a JSON list of [x, y, exponent] triples")
    return Multiplier.from_triples(G * G.dual(), triples)


def standard_multiplier(G: FiniteAbelianGroup,
                        convention: Convention | str = Convention.PAPER_MATRIX) -> Multiplier:
    """m((x,phi),(y,psi)) = phi(y), or its conjugate for ``paper-stated``."""
    convention = Convention(convention)
    xi = G * G.dual()
    M = G.exponent
    k = len(G.orders)
    coords = np.array(xi.elements, dtype=np.int64).reshape(xi.order, 2 * k)
    weights = np.array([M // n for n in G.orders], dtype=np.int64)
    phi = coords[:, k:] * weights
    y = coords[:, :k]
    table = phi @ y.T
    if convention is Convention.PAPER_STATED:
        table = -table
    return Multiplier(xi, table, M, convention.value)


@dataclass
class ValidationReport:
    cocycle_violations: list[tuple[int, int, int]] = field(default_factory=list)
    normalization_violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.cocycle_violations and not self.normalization_violations

    def __len__(self) -> int:
        return len(self.cocycle_violations) + len(self.normalization_violations)


def validate_multiplier(m: Multiplier) -> ValidationReport:
    """Exhaustive cocycle and normalization check over Xi^3."""
    report = ValidationReport()
    defects = kernels.cocycle_defects(m.xi.add_table, m.table, m.modulus)
    report.cocycle_violations = [tuple(int(v) for v in row) for row in defects]
    for i in range(m.xi.order):
        if m.table[i, 0]:
            report.normalization_violations.append((i, 0))
        if m.table[0, i] and i:
            report.normalization_violations.append((0, i))
    return report


@dataclass(frozen=True, eq=False)
class Bicharacter:
    xi: FiniteAbelianGroup
    table: np.ndarray
    modulus: int

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> TorusExponent:
        return TorusExponent(int(self.table[self.xi.index(x), self.xi.index(y)]), self.modulus)

    def at(self, i: int, j: int) -> TorusExponent:
        return TorusExponent(int(self.table[i, j]), self.modulus)


def bicharacter(m: Multiplier) -> Bicharacter:
    t = np.ascontiguousarray(m.sigma_table)
    t.setflags(write=False)
    return Bicharacter(m.xi, t, m.modulus)


def is_phase_space(xi: FiniteAbelianGroup, m: Multiplier) -> bool:
    """True when x -> sigma(., x) has trivial kernel (hence is bijective)."""
    if m.xi != xi:
        raise InputError("multiplier is defined on a different group")
    sigma = np.ascontiguousarray(m.sigma_table)
    everything = np.ones(xi.order, dtype=np.uint8)
    kernel = kernels.annihilator_mask(sigma.T.copy(), everything)
    return int(kernel.sum()) == 1


class PhaseSpace:
    """Xi = G x G^ with a validated multiplier satisfying the phase-space axiom."""

    def __init__(self, G: FiniteAbelianGroup, multiplier: Multiplier, *, validate: bool = True):
        xi = G * G.dual()
        if multiplier.xi != xi:
            raise InputError(f"multiplier lives on {multiplier.xi}, expected {xi}")
        self.G = G
        self.xi = xi
        self.multiplier = multiplier
        self.sigma = bicharacter(multiplier)
        self.modulus = multiplier.modulus
        if validate:
            report = validate_multiplier(multiplier)
            if not report.ok:
                raise PhaseSpaceError(f"multiplier fails {len(report)} cocycle/normalization checks")
            if not is_phase_space(xi, multiplier):
                raise PhaseSpaceError("x -> sigma(., x) is not injective")

    @classmethod
    def standard(cls, G: FiniteAbelianGroup,
                 convention: Convention | str = Convention.PAPER_MATRIX) -> PhaseSpace:
        return cls(G, standard_multiplier(G, convention))

    @property
    def convention(self) -> str | None:
        return self.multiplier.convention

    def split(self, x: Sequence[int]) -> tuple[GroupElement, GroupElement]:
        k = len(self.G.orders)
        return tuple(x[:k]), tuple(x[k:])

    def join(self, g: Sequence[int], phi: Sequence[int]) -> GroupElement:
        return self.xi.reduce(tuple(g) + tuple(phi))

    def m(self, x: Sequence[int], y: Sequence[int]) -> TorusExponent:
        return self.multiplier(x, y)

    def __repr__(self) -> str:
        return f"PhaseSpace({self.G} x {self.G}^, {self.convention or 'custom'})"


def sigma_complement(ps: PhaseSpace, H: Subgroup) -> Subgroup:
    """H^sigma = {z : sigma(z, w) = 1 for all w in H}."""
    sigma = np.ascontiguousarray(ps.sigma.table)
    mask = kernels.annihilator_mask(sigma, H.mask)
    return subgroup_from_mask(ps.xi, mask)


def is_lagrangian(ps: PhaseSpace, H: Subgroup) -> bool:
    return sigma_complement(ps, H).same_elements(H)


def is_isotropic(ps: PhaseSpace, H: Subgroup) -> bool:
    idx = sorted(H.indices)
    return not np.any(ps.sigma.table[np.ix_(idx, idx)])


def enumerate_lagrangians(ps: PhaseSpace) -> list[Subgroup]:
    n = ps.xi.order
    root = math.isqrt(n)
    if root * root != n:
        return []
    out = [H for H in enumerate_subgroups(ps.xi, root) if is_lagrangian(ps, H)]
    for H in out:
        if H.order ** 2 != n:
            raise PhaseSpaceError(f"Lagrangian {H} has |H|^2 != |Xi|")
    return out
