# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclotomic-vanishing kernels.

Both entry points decide ``sum_i a_i zeta_m^{r_i} == 0`` through
``X^m - 1 | G(X) * prod_{p | m} (X^{m/p} - 1)`` on a dense length-m
accumulator.  Inputs are int64 and already reduced mod m; the dispatcher
in ``__init__`` guarantees no overflow.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libc.stdlib cimport calloc, free, malloc, qsort

cnp.import_array()


cdef inline bint _zero_after_product(const int64_t[::1] res, const int64_t[::1] coeffs,
                                     int64_t m, const int64_t[::1] shifts,
                                     const int64_t[::1] signs, int64_t* buf) noexcept nogil:
    cdef Py_ssize_t i, s, nt = res.shape[0], ns = shifts.shape[0]
    cdef int64_t idx, c
    cdef bint ok = True
    for i in range(nt):
        c = coeffs[i]
        for s in range(ns):
            idx = res[i] + shifts[s]
            if idx >= m:
                idx -= m
            buf[idx] += signs[s] * c
    # second pass over the touched cells only, leaving buf zeroed for reuse
    for i in range(nt):
        for s in range(ns):
            idx = res[i] + shifts[s]
            if idx >= m:
                idx -= m
            if buf[idx] != 0:
                ok = False
                buf[idx] = 0
    return ok


cdef struct Cell:
    int64_t idx
    int64_t w


cdef int _cmp_cell(const void* a, const void* b) noexcept nogil:
    cdef int64_t x = (<const Cell*> a).idx, y = (<const Cell*> b).idx
    return (x > y) - (x < y)


cdef bint _zero_by_sorting(const int64_t[::1] res, const int64_t[::1] coeffs, int64_t m,
                           const int64_t[::1] shifts, const int64_t[::1] signs,
                           Cell* cells) noexcept nogil:
    cdef Py_ssize_t i, s, k = 0, nt = res.shape[0], ns = shifts.shape[0]
    cdef int64_t idx, run
    for i in range(nt):
        for s in range(ns):
            idx = res[i] + shifts[s]
            if idx >= m:
                idx -= m
            cells[k].idx = idx
            cells[k].w = signs[s] * coeffs[i]
            k += 1
    qsort(cells, k, sizeof(Cell), _cmp_cell)
    i = 0
    while i < k:
        run = 0
        idx = cells[i].idx
        while i < k and cells[i].idx == idx:
            run += cells[i].w
            i += 1
        if run != 0:
            return False
    return True


def divides_reduced(const int64_t[::1] residues, const int64_t[::1] coeffs, int64_t m,
                    const int64_t[::1] shifts, const int64_t[::1] signs):
    cdef Py_ssize_t cells_needed = residues.shape[0] * shifts.shape[0]
    cdef int64_t* buf
    cdef Cell* cells
    cdef bint ok
    if m > 32 * cells_needed + 65536:
        # sparse case: a dense length-m buffer would cost more than sorting
        cells = <Cell*> malloc(max(cells_needed, 1) * sizeof(Cell))
        if cells == NULL:
            raise MemoryError()
        with nogil:
            ok = _zero_by_sorting(residues, coeffs, m, shifts, signs, cells)
        free(cells)
        return bool(ok)
    buf = <int64_t*> calloc(m, sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        ok = _zero_after_product(residues, coeffs, m, shifts, signs, buf)
    free(buf)
    return bool(ok)


def vanishing_mask(const int64_t[:, ::1] exps, const int64_t[::1] coeffs, int64_t m,
                   const int64_t[::1] shifts, const int64_t[::1] signs,
                   const int64_t[:, ::1] points):
    cdef Py_ssize_t P = points.shape[0], nt = exps.shape[0], k = exps.shape[1]
    cdef Py_ssize_t p, i, t
    cdef int64_t acc
    out = np.zeros(P, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mask = out
    res_arr = np.empty(nt, dtype=np.int64)
    cdef int64_t[::1] res = res_arr
    cdef int64_t* buf = <int64_t*> calloc(m, sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        for p in range(P):
            for i in range(nt):
                acc = 0
                for t in range(k):
                    acc = (acc + exps[i, t] * points[p, t]) % m
                res[i] = acc
            mask[p] = _zero_after_product(res, coeffs, m, shifts, signs, buf)
    free(buf)
    return out.view(bool)
