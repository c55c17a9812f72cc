# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gauss-Jordan elimination over a prime field.

Values are held as uint64 and reduced with a Barrett step, so the modulus
must be below 2**31 (a + f*b then stays below 2**63).
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t lv_barrett(uint64_t x, uint64_t p, uint64_t mu) {
        uint64_t qh = (uint64_t)(((unsigned __int128)x * mu) >> 64);
        uint64_t r = x - qh * p;
        return r >= p ? r - p : r;
    }
    """
    uint64_t lv_barrett(uint64_t x, uint64_t p, uint64_t mu) nogil

MAX_MODULUS = 1 << 31


cdef uint64_t _inv(uint64_t a, uint64_t p, uint64_t mu) nogil:
    cdef uint64_t result = 1
    cdef uint64_t e = p - 2
    while e:
        if e & 1:
            result = lv_barrett(result * a, p, mu)
        a = lv_barrett(a * a, p, mu)
        e >>= 1
    return result


cdef Py_ssize_t _rref(uint64_t* a, Py_ssize_t n, Py_ssize_t m, uint64_t p,
                      uint64_t mu, Py_ssize_t* pivots) nogil:
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef uint64_t inv, f, tmp
    cdef uint64_t* prow
    cdef uint64_t* irow
    for c in range(m):
        if r == n:
            break
        piv = -1
        for i in range(r, n):
            if a[i * m + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, m):
                tmp = a[piv * m + j]
                a[piv * m + j] = a[r * m + j]
                a[r * m + j] = tmp
        prow = a + r * m
        inv = _inv(prow[c], p, mu)
        for j in range(c, m):
            prow[j] = lv_barrett(prow[j] * inv, p, mu)
        for i in range(n):
            if i == r:
                continue
            irow = a + i * m
            if irow[c] == 0:
                continue
            f = p - irow[c]
            for j in range(c, m):
                irow[j] = lv_barrett(irow[j] + f * prow[j], p, mu)
        pivots[r] = c
        r += 1
    return r


def rref(rows, q):
    """Return ``(reduced_rows, pivot_columns)`` for a list-of-lists matrix mod q."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t m = len(rows[0]) if n else 0
    cdef Py_ssize_t i, j, rank
    cdef uint64_t p = q
    cdef uint64_t mu
    if q < 2 or q >= MAX_MODULUS:
        raise ValueError(f"modulus {q} outside compiled kernel range")
    if n == 0 or m == 0:
        return [list(r) for r in rows], []
    mu = <uint64_t>((1 << 64) // q)
    cdef uint64_t* a = <uint64_t*> malloc(n * m * sizeof(uint64_t))
    cdef Py_ssize_t* pivots = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    if a == NULL or pivots == NULL:
        free(a)
        free(pivots)
        raise MemoryError()
    try:
        for i in range(n):
            row = rows[i]
            if len(row) != m:
                raise ValueError("ragged matrix")
            for j in range(m):
                a[i * m + j] = row[j] % q
        with nogil:
            rank = _rref(a, n, m, p, mu, pivots)
        out = [[a[i * m + j] for j in range(m)] for i in range(n)]
        return out, [pivots[i] for i in range(rank)]
    finally:
        free(a)
        free(pivots)


def interpolation_rows(alphas, windows, Py_ssize_t n_a0, Py_ssize_t D, q):
    """Rows ``[alpha^e (e < n_a0)] + [y_s * alpha^e (e <= D)]`` for each point."""
    cdef uint64_t p = q
    cdef uint64_t mu
    cdef uint64_t a, x, ys
    cdef Py_ssize_t e, npts = len(alphas)
    cdef Py_ssize_t npw = max(n_a0, D + 1)
    if q < 2 or q >= MAX_MODULUS:
        raise ValueError(f"modulus {q} outside compiled kernel range")
    mu = <uint64_t>((1 << 64) // q)
    out = []
    cdef uint64_t* pw = <uint64_t*> malloc((npw + 1) * sizeof(uint64_t))
    if pw == NULL:
        raise MemoryError()
    try:
        for i in range(npts):
            a = alphas[i] % q
            x = 1
            for e in range(npw):
                pw[e] = x
                x = lv_barrett(x * a, p, mu)
            row = [pw[e] for e in range(n_a0)]
            for y in windows[i]:
                ys = y % q
                row.extend([lv_barrett(ys * pw[e], p, mu) for e in range(D + 1)])
            out.append(row)
        return out
    finally:
        free(pw)


def poly_eval_many(coeffs, xs, q):
    """Horner evaluation of one polynomial at many points."""
    cdef uint64_t p = q
    cdef uint64_t mu, acc, x
    cdef Py_ssize_t i, n = len(coeffs)
    if q < 2 or q >= MAX_MODULUS:
        raise ValueError(f"modulus {q} outside compiled kernel range")
    mu = <uint64_t>((1 << 64) // q)
    cdef uint64_t* c = <uint64_t*> malloc((n + 1) * sizeof(uint64_t))
    if c == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            c[i] = coeffs[i] % q
        out = []
        for xv in xs:
            x = xv % q
            acc = 0
            for i in range(n - 1, -1, -1):
                acc = lv_barrett(acc * x + c[i], p, mu)
            out.append(acc)
        return out
    finally:
        free(c)
