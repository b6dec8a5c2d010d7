"""Pure-Python (numpy) versions of the exhaustive table kernels.

Signatures mirror ``_kernels.pyx``; group elements are integer indices,
``add`` is the addition table and ``table`` a multiplier exponent table
over ``modulus``.
"""

import numpy as np


def closure_mask(add, mask, gens):
    """Mask of the subgroup generated by the subgroup ``mask`` and ``gens``."""
    out = np.array(mask, dtype=np.uint8, copy=True)
    out[0] = 1
    queue = [int(i) for i in np.flatnonzero(out)]
    gens = [int(g) for g in gens]
    while queue:
        e = queue.pop()
        for g in gens:
            s = add[e, g]
            if not out[s]:
                out[s] = 1
                queue.append(s)
    return out


def cocycle_defects(add, table, modulus):
    """Triples (x, y, z) where m(x+y,z) m(x,y) != m(x,y+z) m(y,z)."""
    n = table.shape[0]
    found = []
    for x in range(n):
        lhs = table[add[x][:, None], np.arange(n)[None, :]] + table[x][:, None]
        rhs = table[x][add] + table
        bad = np.argwhere((lhs - rhs) % modulus != 0)
        for y, z in bad:
            found.append((x, int(y), int(z)))
    return np.array(found, dtype=np.int64).reshape(-1, 3)


def annihilator_mask(sigma, mask):
    """Elements z with sigma[z, w] == 0 for every w in ``mask``."""
    cols = np.flatnonzero(mask)
    return np.all(sigma[:, cols] == 0, axis=1).astype(np.uint8)


def projective_defects(rows, phases, add, table, modulus):
    """Pairs (x, y) where U_x U_y != m(x, y) U_{x+y} for monomial U.

    ``rows[x, c]`` is the row of the nonzero entry of column c of U_x and
    ``phases[x, c]`` its exponent over ``modulus``.
    """
    n = rows.shape[0]
    found = []
    for x in range(n):
        for y in range(n):
            s = add[x, y]
            prod_rows = rows[x][rows[y]]
            prod_phase = (phases[x][rows[y]] + phases[y]) % modulus
            if (not np.array_equal(prod_rows, rows[s])
                    or np.any((prod_phase - phases[s] - table[x, y]) % modulus)):
                found.append((x, y))
    return np.array(found, dtype=np.int64).reshape(-1, 2)
