# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_hkernel_py``.

Nonnegative points whose complete sums provably fit in 63 bits take a C
``long long`` path; anything else falls back to Python integers.
"""

from libc.stdint cimport int64_t

cdef enum:
    MAXK = 64

cdef object INT64_LIMIT = 2 ** 62


cdef bint _fits_int64(list coords, int kmax):
    # with nonnegative coordinates every partial Newton sum is at most
    # k * h_k <= k * C(n+k-1, k) * B^k, and power sums are at most n * B^k
    cdef Py_ssize_t n = len(coords)
    if kmax >= MAXK:
        return False
    cdef object bound = 0
    cdef object c
    for c in coords:
        if c < 0:
            return False
        if c > bound:
            bound = c
    cdef object binom = 1
    cdef int k
    for k in range(1, kmax + 1):
        binom = binom * (n + k - 1) // k
    cdef object worst = (kmax + n) * binom * bound ** kmax
    return worst < INT64_LIMIT


cdef void _table_c(int64_t* x, Py_ssize_t n, int kmax, int64_t* h):
    cdef int64_t p[MAXK + 1]
    cdef int64_t pw
    cdef int64_t s
    cdef Py_ssize_t j
    cdef int k, i
    for k in range(1, kmax + 1):
        p[k] = 0
    for j in range(n):
        pw = 1
        for k in range(1, kmax + 1):
            pw *= x[j]
            p[k] += pw
    h[0] = 1
    for k in range(1, kmax + 1):
        s = 0
        for i in range(1, k + 1):
            s += h[k - i] * p[i]
        h[k] = s // k


cdef list _table_obj(list coords, int kmax):
    cdef list psums = [len(coords)]
    cdef list powers = list(coords)
    cdef Py_ssize_t j, n = len(coords)
    cdef int k, i
    cdef object s
    for k in range(1, kmax + 1):
        s = 0
        for j in range(n):
            s += powers[j]
        psums.append(s)
        if k < kmax:
            for j in range(n):
                powers[j] = powers[j] * coords[j]
    cdef list h = [1]
    for k in range(1, kmax + 1):
        s = 0
        for i in range(1, k + 1):
            s += h[k - i] * psums[i]
        h.append(s // k)
    return h


cdef list _table(list coords, int kmax):
    cdef Py_ssize_t n = len(coords), j
    cdef int64_t buf[256]
    cdef int64_t h[MAXK + 1]
    cdef int k
    if n <= 256 and _fits_int64(coords, kmax):
        for j in range(n):
            buf[j] = coords[j]
        _table_c(buf, n, kmax, h)
        return [h[k] for k in range(kmax + 1)]
    return _table_obj(coords, kmax)


def power_sums(coords, int kmax):
    """``[p_0, p_1, ..., p_kmax]`` with ``p_0 = len(coords)``."""
    cdef list cs = list(coords)
    cdef list out = [len(cs)]
    cdef list powers = list(cs)
    cdef Py_ssize_t j, n = len(cs)
    cdef int k
    for k in range(1, kmax + 1):
        out.append(sum(powers))
        if k < kmax:
            for j in range(n):
                powers[j] = powers[j] * cs[j]
    return out


def h_from_power_sums(psums, int kmax):
    cdef list h = [1]
    cdef int k, i
    cdef object s
    for k in range(1, kmax + 1):
        s = 0
        for i in range(1, k + 1):
            s += h[k - i] * psums[i]
        h.append(s // k if isinstance(s, int) else s / k)
    return h


def complete_h_table(coords, int kmax):
    """``[h_0, ..., h_kmax]`` at an integer point."""
    return _table(list(coords), kmax)


def complete_h_batch(points, int kmax):
    return [_table(list(p), kmax) for p in points]


def first_violation(points, mu_parts, lam_parts, w_mu, w_lam):
    """Index of the first point with ``h_mu * w_lam < h_lam * w_mu``, else -1."""
    cdef list mus = list(mu_parts)
    cdef list lams = list(lam_parts)
    cdef int kmax = max(max(mus), max(lams))
    cdef Py_ssize_t idx = 0
    cdef list h
    cdef object a, b, part
    for pt in points:
        h = _table(list(pt), kmax)
        a = 1
        for part in mus:
            a = a * h[part]
        b = 1
        for part in lams:
            b = b * h[part]
        if a * w_lam < b * w_mu:
            return idx
        idx += 1
    return -1
