"""Finite abelian groups Z_n1 x ... x Z_nk, their characters and subgroups.

Elements are plain tuples of reduced coordinates.  Every group also has an
integer indexing of its elements in lexicographic order of the coordinate
tuples; the exhaustive kernels work on those indices.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .torus import TorusExponent, lcm

GroupElement = tuple[int, ...]


class InputError(ValueError):
    """Malformed user input (group spec, element, selector...)."""


def parse_group_spec(spec: str | Sequence[int]) -> FiniteAbelianGroup:
    """Parse "2", "2x2", "4x2" (or a list of orders) into a group."""
    if not isinstance(spec, str):
        orders = list(spec)
    else:
        text = spec.strip()
        if not text:
            raise InputError("empty group spec")
        orders = []
        pos = 0
        for part in re.split(r"([x×*])", text):
            if part in ("x", "×", "*"):
                pos += len(part)
                continue
            if not part.strip().isdigit():
                raise InputError(f"bad cyclic order {part!r} at position {pos} in {spec!r}")
            orders.append(int(part))
            pos += len(part)
    for i, n in enumerate(orders):
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise InputError(f"cyclic order at factor {i} must be a positive integer, got {n!r}")
    return FiniteAbelianGroup(tuple(int(n) for n in orders))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if any(n < 1 for n in self.orders):
            raise InputError(f"cyclic orders must be positive: {self.orders}")

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders)

    @property
    def zero(self) -> GroupElement:
        return (0,) * len(self.orders)

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.orders) if self.orders else "Z1"

    def spec(self) -> str:
        return "x".join(str(n) for n in self.orders) or "1"

    def __mul__(self, other: FiniteAbelianGroup) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.orders + other.orders)

    def dual(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.orders)

    # -- elements ---------------------------------------------------------
    @cached_property
    def elements(self) -> list[GroupElement]:
        return [tuple(e) for e in product(*(range(n) for n in self.orders))]

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides, acc = [], 1
        for n in reversed(self.orders):
            strides.append(acc)
            acc *= n
        return tuple(reversed(strides))

    def check(self, x: Iterable[int]) -> GroupElement:
        x = tuple(int(c) for c in x)
        if len(x) != len(self.orders):
            raise InputError(f"element {x} has {len(x)} coordinates, group {self} needs {len(self.orders)}")
        for c, n in zip(x, self.orders):
            if not 0 <= c < n:
                raise InputError(f"element {x} out of range for {self}")
        return x

    def reduce(self, x: Iterable[int]) -> GroupElement:
        return tuple(int(c) % n for c, n in zip(x, self.orders))

    def index(self, x: Sequence[int]) -> int:
        return sum((c % n) * s for c, n, s in zip(x, self.orders, self._strides))

    def element(self, i: int) -> GroupElement:
        return self.elements[i]

    def add(self, x: Sequence[int], y: Sequence[int]) -> GroupElement:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x: Sequence[int]) -> GroupElement:
        return tuple((-a) % n for a, n in zip(x, self.orders))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> GroupElement:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.orders))

    def scale(self, k: int, x: Sequence[int]) -> GroupElement:
        return tuple((k * a) % n for a, n in zip(x, self.orders))

    def element_order(self, x: Sequence[int]) -> int:
        return lcm(*(n // math.gcd(a, n) for a, n in zip(x, self.orders)))

    @cached_property
    def add_table(self) -> np.ndarray:
        coords = np.array(self.elements, dtype=np.int64).reshape(self.order, len(self.orders))
        orders = np.array(self.orders, dtype=np.int64)
        strides = np.array(self._strides, dtype=np.int64)
        summed = (coords[:, None, :] + coords[None, :, :]) % orders
        table = np.ascontiguousarray((summed * strides).sum(axis=-1), dtype=np.int64)
        table.setflags(write=False)
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.index(self.neg(x)) for x in self.elements], dtype=np.int64)


@dataclass(frozen=True)
class Character:
    """The character chi_y(x) = exp(2 pi i sum_j x_j y_j / n_j) of ``group``."""

    group: FiniteAbelianGroup
    coords: GroupElement

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", self.group.check(self.coords))

    def __call__(self, x: Sequence[int]) -> TorusExponent:
        return character_eval(self, x)


def character_eval(chi: Character, x: Sequence[int]) -> TorusExponent:
    group = chi.group
    M = group.exponent
    x = group.reduce(x)
    num = sum(a * b * (M // n) for a, b, n in zip(x, chi.coords, group.orders))
    return TorusExponent(num, M)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteAbelianGroup
    elements: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...] = field(default=(), compare=False)
    _index_set: frozenset[int] = field(default=frozenset(), repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def indices(self) -> frozenset[int]:
        return self._index_set

    @property
    def mask(self) -> np.ndarray:
        out = np.zeros(self.parent.order, dtype=np.uint8)
        out[list(self._index_set)] = 1
        return out

    @property
    def exponent(self) -> int:
        return lcm(*(self.parent.element_order(x) for x in self.elements))

    def __contains__(self, x: object) -> bool:
        return self.parent.index(x) in self._index_set  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def issubset(self, other: Subgroup) -> bool:
        return self._index_set <= other._index_set

    def same_elements(self, other: Subgroup) -> bool:
        return self._index_set == other._index_set

    def __str__(self) -> str:
        return "{" + ", ".join("(" + ",".join(map(str, x)) + ")" for x in self.elements) + "}"


def subgroup_from_mask(group: FiniteAbelianGroup, mask: np.ndarray,
                       generators: Sequence[GroupElement] | None = None) -> Subgroup:
    idx = np.flatnonzero(mask)
    members = frozenset(int(i) for i in idx)
    if generators is None:
        generators = _greedy_generators(group, members)
    elements = tuple(group.element(int(i)) for i in idx)
    return Subgroup(group, elements, tuple(generators), members)


def _greedy_generators(group: FiniteAbelianGroup, members: frozenset[int]) -> list[GroupElement]:
    gens: list[int] = []
    cur = np.zeros(group.order, dtype=np.uint8)
    cur[0] = 1
    for i in sorted(members):
        if not cur[i]:
            gens.append(i)
            cur = kernels.closure_mask(group.add_table, cur, np.array([i], dtype=np.int64))
    return [group.element(i) for i in gens]


def generated_subgroup(group: FiniteAbelianGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    gens = [group.check(g) for g in gens]
    seed = np.zeros(group.order, dtype=np.uint8)
    seed[0] = 1
    idx = np.array([group.index(g) for g in gens], dtype=np.int64)
    mask = kernels.closure_mask(group.add_table, seed, idx)
    return subgroup_from_mask(group, mask, generators=gens)


def enumerate_subgroups(group: FiniteAbelianGroup, order: int | None = None) -> list[Subgroup]:
    """All subgroups, optionally only those of the given order.

    Subgroups are grown from {0} by adjoining one element at a time; only
    subgroups whose order divides ``order`` are grown when a filter is set.
    """
    if order is not None and (order < 1 or group.order % order):
        raise InputError(f"order {order} does not divide |G| = {group.order}")
    add = group.add_table
    n = group.order
    zero = np.zeros(n, dtype=np.uint8)
    zero[0] = 1
    seen: dict[bytes, tuple[np.ndarray, list[int]]] = {zero.tobytes(): (zero, [])}
    frontier = [zero.tobytes()]
    while frontier:
        nxt = []
        for key in frontier:
            mask, gens = seen[key]
            for g in range(n):
                if mask[g]:
                    continue
                grown = kernels.closure_mask(add, mask, np.array([g], dtype=np.int64))
                size = int(grown.sum())
                if order is not None and order % size:
                    continue
                k = grown.tobytes()
                if k not in seen:
                    seen[k] = (grown, gens + [g])
                    nxt.append(k)
        frontier = sorted(nxt)
    out = []
    for mask, gens in seen.values():
        if order is None or int(mask.sum()) == order:
            out.append(subgroup_from_mask(group, mask, [group.element(i) for i in gens]))
    out.sort(key=lambda s: s.elements)
    return out


@dataclass(frozen=True)
class QuotientData:
    parent: FiniteAbelianGroup
    subgroup: Subgroup
    coset_reps: tuple[GroupElement, ...]
    labels: np.ndarray = field(repr=False, compare=False)

    def index_of(self, x: Sequence[int]) -> int:
        return int(self.labels[self.parent.index(x)])

    def rep_of(self, x: Sequence[int]) -> GroupElement:
        return self.coset_reps[self.index_of(x)]

    def __len__(self) -> int:
        return len(self.coset_reps)

    def coset(self, c: int) -> list[GroupElement]:
        return [self.parent.element(int(i)) for i in np.flatnonzero(self.labels == c)]


def quotient(group: FiniteAbelianGroup, subgroup: Subgroup) -> QuotientData:
    """Cosets of ``subgroup`` with lexicographically minimal representatives."""
    labels = np.full(group.order, -1, dtype=np.int64)
    add = group.add_table
    h_idx = np.array(sorted(subgroup.indices), dtype=np.int64)
    reps = []
    for i in range(group.order):  # index order is lexicographic order
        if labels[i] >= 0:
            continue
        labels[add[i, h_idx]] = len(reps)
        reps.append(group.element(i))
    labels.setflags(write=False)
    return QuotientData(group, subgroup, tuple(reps), labels)
