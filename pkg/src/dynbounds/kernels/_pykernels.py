"""Pure-Python twins of the compiled kernels.

Same call signatures, but values are Python ints and ``math.inf`` stands
for TOP, so there is no magnitude limit.  Inputs may be nested lists or
numpy arrays.
"""

from __future__ import annotations

import math

INF = math.inf


def _lst(x):
    return x.tolist() if hasattr(x, "tolist") else x


def string_ed(a, b, sub, dele, ins):
    a, b, sub, dele, ins = _lst(a), _lst(b), _lst(sub), _lst(dele), _lst(ins)
    m = len(b)
    prev = [0] * (m + 1)
    for j in range(1, m + 1):
        prev[j] = prev[j - 1] + ins[b[j - 1]]
    for ai in a:
        row = sub[ai]
        da = dele[ai]
        cur = [prev[0] + da] + [0] * m
        for j in range(1, m + 1):
            bj = b[j - 1]
            v = prev[j] + da
            w = cur[j - 1] + ins[bj]
            if w < v:
                v = w
            w = prev[j - 1] + row[bj]
            if w < v:
                v = w
            cur[j] = v
        prev = cur
    return prev[m]


def string_ed_table(a, b, sub, dele, ins):
    a, b, sub, dele, ins = _lst(a), _lst(b), _lst(sub), _lst(dele), _lst(ins)
    n, m = len(a), len(b)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for j in range(1, m + 1):
        d[0][j] = d[0][j - 1] + ins[b[j - 1]]
    for i in range(1, n + 1):
        ai = a[i - 1]
        d[i][0] = d[i - 1][0] + dele[ai]
        for j in range(1, m + 1):
            bj = b[j - 1]
            d[i][j] = min(d[i - 1][j] + dele[ai], d[i][j - 1] + ins[bj], d[i - 1][j - 1] + sub[ai][bj])
    return d


def _forest(l1, l2, i, j, sub, dele, ins, td, fd):
    li, lj = l1[i], l2[j]
    nx, ny = i - li + 1, j - lj + 1
    fd[0][0] = 0
    for x in range(1, nx + 1):
        fd[x][0] = fd[x - 1][0] + dele[li + x - 1]
    row0 = fd[0]
    for y in range(1, ny + 1):
        row0[y] = row0[y - 1] + ins[lj + y - 1]
    tree_cols = [l2[lj + y - 1] == lj for y in range(ny + 1)]
    qs = [l2[lj + y - 1] - lj for y in range(ny + 1)]
    ins_local = ins[lj:lj + ny]
    for x in range(1, nx + 1):
        xi = li + x - 1
        dx = dele[xi]
        xtree = l1[xi] == li
        up, cur = fd[x - 1], fd[x]
        base = fd[l1[xi] - li]
        srow = sub[xi]
        trow = td[xi]
        for y in range(1, ny + 1):
            yj = lj + y - 1
            v = up[y] + dx
            w = cur[y - 1] + ins_local[y - 1]
            if w < v:
                v = w
            if xtree and tree_cols[y]:
                w = up[y - 1] + srow[yj]
                if w < v:
                    v = w
                cur[y] = v
                trow[yj] = v
            else:
                w = base[qs[y]] + trow[yj]
                if w < v:
                    v = w
                cur[y] = v


def ted(l1, l2, kr1, kr2, sub, dele, ins):
    l1, l2, kr1, kr2 = _lst(l1), _lst(l2), _lst(kr1), _lst(kr2)
    sub, dele, ins = _lst(sub), _lst(dele), _lst(ins)
    n1, n2 = len(l1), len(l2)
    td = [[INF] * n2 for _ in range(n1)]
    fd = [[0] * (n2 + 1) for _ in range(n1 + 1)]
    for i in kr1:
        for j in kr2:
            _forest(l1, l2, i, j, sub, dele, ins, td, fd)
    return td


def forest(l1, l2, i, j, sub, dele, ins, td):
    l1, l2, sub, dele, ins = _lst(l1), _lst(l2), _lst(sub), _lst(dele), _lst(ins)
    nx, ny = i - l1[i] + 1, j - l2[j] + 1
    fd = [[0] * (ny + 1) for _ in range(nx + 1)]
    _forest(l1, l2, i, j, sub, dele, ins, td, fd)
    return fd


def interval_min(dele, pc):
    dele, pc = _lst(dele), _lst(pc)
    n = len(dele)
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for length in range(1, n + 1):
        for i in range(0, n - length + 1):
            j = i + length
            v = dele[i] + d[i + 1][j]
            row = pc[i]
            below = d[i + 1]
            for k in range(i + 1, j):
                c = row[k]
                if c != INF:
                    w = c + below[k] + d[k + 1][j]
                    if w < v:
                        v = w
            d[i][j] = v
    return d
