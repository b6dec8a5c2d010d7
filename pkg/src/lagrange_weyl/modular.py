"""Integer linear systems A a = b (mod M) via unimodular diagonalization."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence


@dataclass
class ModularSolution:
    modulus: int
    particular: list[int]
    kernel: list[tuple[list[int], int]]  # (generator, additive order)

    @property
    def count(self) -> int:
        return math.prod(order for _, order in self.kernel)

    def all(self) -> list[tuple[int, ...]]:
        M = self.modulus
        out = []
        for ks in product(*(range(order) for _, order in self.kernel)):
            v = list(self.particular)
            for k, (gen, _) in zip(ks, self.kernel):
                if k:
                    v = [(a + k * g) % M for a, g in zip(v, gen)]
            out.append(tuple(a % M for a in v))
        return sorted(set(out))


def diagonalize(A: Sequence[Sequence[int]], b: Sequence[int]):
    """Return (D, b', V) with U A V = D diagonal, b' = U b, V unimodular.

    Only row operations touch ``b``; the column operations are recorded in V.
    The diagonal is not normalized to Smith form (divisibility is not needed
    for solving).
    """
    D = [list(map(int, row)) for row in A]
    bb = list(map(int, b))
    r = len(D)
    c = len(D[0]) if r else 0
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_cols(j1, j2):
        for row in D:
            row[j1], row[j2] = row[j2], row[j1]
        for row in V:
            row[j1], row[j2] = row[j2], row[j1]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in D:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i0, j0 = best
        D[t], D[i0] = D[i0], D[t]
        bb[t], bb[i0] = bb[i0], bb[t]
        swap_cols(t, j0)
        while True:
            p = D[t][t]
            moved = False
            for i in range(t + 1, r):
                if D[i][t]:
                    q = D[i][t] // p
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    bb[i] -= q * bb[t]
                    if D[i][t]:
                        D[t], D[i] = D[i], D[t]
                        bb[t], bb[i] = bb[i], bb[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, c):
                if D[t][j]:
                    q = D[t][j] // p
                    add_col(j, t, q)
                    if D[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if not moved:
                break
        t += 1
    return D, bb, V


def solve_mod(A: Sequence[Sequence[int]], b: Sequence[int], modulus: int) -> ModularSolution | None:
    """All solutions of A a = b (mod modulus), or None if there are none."""
    M = modulus
    D, bb, V = diagonalize(A, b)
    r = len(D)
    c = len(V)
    y0 = [0] * c
    steps: list[tuple[int, int]] = []  # (column, step) with order M // step
    for i in range(r):
        d = D[i][i] if i < c else 0
        if d == 0:
            if bb[i] % M:
                return None
            if i < c:
                steps.append((i, 1))
            continue
        g = math.gcd(d, M)
        if bb[i] % g:
            return None
        Mg = M // g
        y0[i] = (bb[i] // g) * pow((d // g) % Mg, -1, Mg) % Mg if Mg > 1 else 0
        steps.append((i, Mg))
    for j in range(r, c):
        steps.append((j, 1))
    particular = [sum(V[k][j] * y0[j] for j in range(c)) % M for k in range(c)]
    kernel = []
    for j, step in steps:
        order = M // step
        if order > 1:
            kernel.append(([V[k][j] * step % M for k in range(c)], order))
    return ModularSolution(M, particular, kernel)
