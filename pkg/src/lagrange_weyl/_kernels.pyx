# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the exhaustive table kernels (see _kernels_py)."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8


cdef inline i64 _mod(i64 a, i64 m) nogil:
    a = a % m
    return a + m if a < 0 else a


cdef inline _c(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def closure_mask(add_obj, mask, gens):
    cdef const i64[:, ::1] add = _c(add_obj)
    cdef Py_ssize_t n = add.shape[0]
    cdef cnp.ndarray[u8, ndim=1] out_arr = np.array(mask, dtype=np.uint8, copy=True)
    cdef u8[::1] out = out_arr
    cdef const i64[::1] g = _c(gens).reshape(-1)
    cdef i64[::1] queue = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, i, k
    cdef i64 e, s
    out[0] = 1
    for i in range(n):
        if out[i]:
            queue[tail] = i
            tail += 1
    while head < tail:
        e = queue[head]
        head += 1
        for k in range(g.shape[0]):
            s = add[e, g[k]]
            if not out[s]:
                out[s] = 1
                queue[tail] = s
                tail += 1
    return out_arr


def cocycle_defects(add_obj, table_obj, i64 modulus):
    cdef const i64[:, ::1] add = _c(add_obj)
    cdef const i64[:, ::1] table = _c(table_obj)
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t x, y, z
    cdef i64 lhs, rhs
    found = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = table[add[x, y], z] + table[x, y]
                rhs = table[x, add[y, z]] + table[y, z]
                if _mod(lhs - rhs, modulus) != 0:
                    found.append((x, y, z))
    return np.array(found, dtype=np.int64).reshape(-1, 3)


def annihilator_mask(sigma_obj, mask):
    cdef const i64[:, ::1] sigma = _c(sigma_obj)
    cdef Py_ssize_t n = sigma.shape[0]
    cdef const u8[::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef cnp.ndarray[u8, ndim=1] out_arr = np.ones(n, dtype=np.uint8)
    cdef u8[::1] out = out_arr
    cdef Py_ssize_t z, w
    for z in range(n):
        for w in range(n):
            if m[w] and sigma[z, w] != 0:
                out[z] = 0
                break
    return out_arr


def projective_defects(rows_obj, phases_obj, add_obj, table_obj, i64 modulus):
    cdef const i64[:, ::1] rows = _c(rows_obj)
    cdef const i64[:, ::1] phases = _c(phases_obj)
    cdef const i64[:, ::1] add = _c(add_obj)
    cdef const i64[:, ::1] table = _c(table_obj)
    cdef Py_ssize_t n = rows.shape[0], d = rows.shape[1]
    cdef Py_ssize_t x, y, c
    cdef i64 s, mid, ph
    cdef bint bad
    found = []
    for x in range(n):
        for y in range(n):
            s = add[x, y]
            bad = False
            for c in range(d):
                mid = rows[y, c]
                if rows[x, mid] != rows[s, c]:
                    bad = True
                    break
                ph = phases[x, mid] + phases[y, c] - phases[s, c] - table[x, y]
                if _mod(ph, modulus) != 0:
                    bad = True
                    break
            if bad:
                found.append((x, y))
    return np.array(found, dtype=np.int64).reshape(-1, 2)
