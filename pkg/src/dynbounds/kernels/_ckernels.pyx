# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled DP kernels over int64 with a saturating TOP sentinel.

Callers guarantee every finite input times the path length stays below
2**61, so sums of finite values never reach ``INF``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef int64_t INF = 4611686018427387904  # 2**62
INF_SENTINEL = INF


cdef inline int64_t sadd(int64_t a, int64_t b) noexcept nogil:
    if a >= INF or b >= INF:
        return INF
    return a + b


cdef inline int64_t min2(int64_t a, int64_t b) noexcept nogil:
    return a if a <= b else b


def string_ed(const int64_t[::1] a, const int64_t[::1] b, const int64_t[:, ::1] sub,
              const int64_t[::1] dele, const int64_t[::1] ins):
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0], i, j
    cdef int64_t[::1] prev = np.empty(m + 1, dtype=np.int64)
    cdef int64_t[::1] cur = np.empty(m + 1, dtype=np.int64)
    cdef int64_t[::1] tmp
    cdef int64_t da, v
    with nogil:
        prev[0] = 0
        for j in range(1, m + 1):
            prev[j] = sadd(prev[j - 1], ins[b[j - 1]])
        for i in range(1, n + 1):
            da = dele[a[i - 1]]
            cur[0] = sadd(prev[0], da)
            for j in range(1, m + 1):
                v = min2(sadd(prev[j], da), sadd(cur[j - 1], ins[b[j - 1]]))
                cur[j] = min2(v, sadd(prev[j - 1], sub[a[i - 1], b[j - 1]]))
            tmp = prev
            prev = cur
            cur = tmp
    return prev[m]


def string_ed_table(const int64_t[::1] a, const int64_t[::1] b, const int64_t[:, ::1] sub,
                    const int64_t[::1] dele, const int64_t[::1] ins):
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0], i, j
    out = np.empty((n + 1, m + 1), dtype=np.int64)
    cdef int64_t[:, ::1] d = out
    cdef int64_t v
    with nogil:
        d[0, 0] = 0
        for j in range(1, m + 1):
            d[0, j] = sadd(d[0, j - 1], ins[b[j - 1]])
        for i in range(1, n + 1):
            d[i, 0] = sadd(d[i - 1, 0], dele[a[i - 1]])
            for j in range(1, m + 1):
                v = min2(sadd(d[i - 1, j], dele[a[i - 1]]), sadd(d[i, j - 1], ins[b[j - 1]]))
                d[i, j] = min2(v, sadd(d[i - 1, j - 1], sub[a[i - 1], b[j - 1]]))
    return out


cdef void _forest(const int64_t[::1] l1, const int64_t[::1] l2, Py_ssize_t i, Py_ssize_t j,
                  const int64_t[:, ::1] sub, const int64_t[::1] dele, const int64_t[::1] ins,
                  int64_t[:, ::1] td, int64_t[:, ::1] fd) noexcept nogil:
    cdef Py_ssize_t li = l1[i], lj = l2[j]
    cdef Py_ssize_t nx = i - li + 1, ny = j - lj + 1
    cdef Py_ssize_t x, y, xi, yj, p, q
    cdef int64_t v, dx
    cdef bint xtree
    fd[0, 0] = 0
    for x in range(1, nx + 1):
        fd[x, 0] = sadd(fd[x - 1, 0], dele[li + x - 1])
    for y in range(1, ny + 1):
        fd[0, y] = sadd(fd[0, y - 1], ins[lj + y - 1])
    for x in range(1, nx + 1):
        xi = li + x - 1
        dx = dele[xi]
        xtree = l1[xi] == li
        p = l1[xi] - li
        for y in range(1, ny + 1):
            yj = lj + y - 1
            v = min2(sadd(fd[x - 1, y], dx), sadd(fd[x, y - 1], ins[yj]))
            if xtree and l2[yj] == lj:
                v = min2(v, sadd(fd[x - 1, y - 1], sub[xi, yj]))
                fd[x, y] = v
                td[xi, yj] = v
            else:
                q = l2[yj] - lj
                fd[x, y] = min2(v, sadd(fd[p, q], td[xi, yj]))


def ted(const int64_t[::1] l1, const int64_t[::1] l2, const int64_t[::1] kr1,
        const int64_t[::1] kr2, const int64_t[:, ::1] sub, const int64_t[::1] dele,
        const int64_t[::1] ins):
    """Zhang-Shasha tree distances for every node pair (postorder indices)."""
    cdef Py_ssize_t n1 = l1.shape[0], n2 = l2.shape[0], a, b
    out = np.full((n1, n2), INF, dtype=np.int64)
    cdef int64_t[:, ::1] td = out
    cdef int64_t[:, ::1] fd = np.empty((n1 + 1, n2 + 1), dtype=np.int64)
    with nogil:
        for a in range(kr1.shape[0]):
            for b in range(kr2.shape[0]):
                _forest(l1, l2, kr1[a], kr2[b], sub, dele, ins, td, fd)
    return out


def forest(const int64_t[::1] l1, const int64_t[::1] l2, Py_ssize_t i, Py_ssize_t j,
           const int64_t[:, ::1] sub, const int64_t[::1] dele, const int64_t[::1] ins,
           int64_t[:, ::1] td):
    """Forest-distance table between the subtrees rooted at ``i`` and ``j``.

    ``td`` must already hold the final tree distances; it is read for
    non-tree cells and rewritten with identical values for tree cells.
    """
    cdef Py_ssize_t nx = i - l1[i] + 1, ny = j - l2[j] + 1
    out = np.empty((nx + 1, ny + 1), dtype=np.int64)
    cdef int64_t[:, ::1] fd = out
    with nogil:
        _forest(l1, l2, i, j, sub, dele, ins, td, fd)
    return out


def interval_min(const int64_t[::1] dele, const int64_t[:, ::1] pc):
    """Half-open interval DP: ``D[i, j]`` is the cheapest way to resolve
    ``S[i:j]`` by dropping single positions or pairing ``i`` with some ``k``."""
    cdef Py_ssize_t n = dele.shape[0], i, j, k, length
    out = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef int64_t[:, ::1] d = out
    cdef int64_t v, c
    with nogil:
        for length in range(1, n + 1):
            for i in range(0, n - length + 1):
                j = i + length
                v = sadd(dele[i], d[i + 1, j])
                for k in range(i + 1, j):
                    c = pc[i, k]
                    if c < INF:
                        v = min2(v, sadd(c, sadd(d[i + 1, k], d[k + 1, j])))
                d[i, j] = v
    return out
