"""DP kernels with a compiled fast path and a pure-Python fallback.

The compiled module is used when it imported cleanly and the cost values
fit its int64 sentinel arithmetic; everything else goes through the
Python twins, which work on unbounded ints.  Set ``DYNBOUNDS_PURE=1`` to
force the fallback.
"""

from __future__ import annotations

import math
import os

from . import _pykernels

try:
    if os.environ.get("DYNBOUNDS_PURE") == "1":
        raise ImportError("pure mode requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

# Finite magnitudes times path length must stay clear of the sentinel 2**62.
_SAFE = 2 ** 61


def backend() -> str:
    return BACKEND


def fits(values, length: int) -> bool:
    """True when int64 saturating arithmetic is exact for these inputs."""
    if _ckernels is None:
        return False
    big = 0
    for v in values:
        if v != math.inf:
            a = abs(v)
            if a > big:
                big = a
    return big * (length + 2) < _SAFE


def _to_np(rows, ncols=None):
    import numpy as np

    inf = _ckernels.INF_SENTINEL
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    arr = np.array([[inf if x == math.inf else x for x in r] for r in rows], dtype=np.int64)
    return np.ascontiguousarray(arr.reshape(len(rows), ncols))


def _vec(xs):
    import numpy as np

    inf = _ckernels.INF_SENTINEL
    return np.ascontiguousarray(np.array([inf if x == math.inf else x for x in xs], dtype=np.int64))


def _from_np(x):
    x = int(x)
    return math.inf if x >= _ckernels.INF_SENTINEL else x


def _unpack(table):
    inf = _ckernels.INF_SENTINEL
    return [[math.inf if v >= inf else v for v in row] for row in table.tolist()]


class _Compact:
    """Label sequences re-indexed over their distinct labels."""

    def __init__(self, a, b, costs):
        u1, u2, sub, dele, ins = costs.dense_labels(a, b)
        i1 = {x: k for k, x in enumerate(u1)}
        i2 = {x: k for k, x in enumerate(u2)}
        self.a = [i1[x] for x in a]
        self.b = [i2[x] for x in b]
        self.sub, self.dele, self.ins = sub, dele, ins

    def values(self):
        for r in self.sub:
            yield from r
        yield from self.dele
        yield from self.ins


def string_ed(a, b, costs, *, pure: bool = False):
    """Weighted edit distance between two label sequences."""
    c = _Compact(a, b, costs)
    if not pure and fits(c.values(), len(a) + len(b)):
        return _from_np(_ckernels.string_ed(_vec(c.a), _vec(c.b), _to_np(c.sub, len(c.ins)), _vec(c.dele), _vec(c.ins)))
    return _pykernels.string_ed(c.a, c.b, c.sub, c.dele, c.ins)


def string_ed_table(a, b, costs, *, pure: bool = False):
    c = _Compact(a, b, costs)
    if not pure and fits(c.values(), len(a) + len(b)):
        t = _ckernels.string_ed_table(_vec(c.a), _vec(c.b), _to_np(c.sub, len(c.ins)), _vec(c.dele), _vec(c.ins))
        return _unpack(t)
    return _pykernels.string_ed_table(c.a, c.b, c.sub, c.dele, c.ins)


class TedTables:
    """Zhang-Shasha tables for one tree pair, in 0-based postorder.

    ``td[i][j]`` is the distance between the subtrees rooted at the i-th and
    j-th postorder nodes; ``forest(i, j)`` recomputes the forest table of one
    pair for traceback.
    """

    def __init__(self, t1, t2, costs, *, pure: bool = False):
        self.order1, labels1, self.l1, self.kr1 = t1.postorder_arrays()
        self.order2, labels2, self.l2, self.kr2 = t2.postorder_arrays()
        u1, u2, small, sdel, sins = costs.dense_labels(labels1, labels2)
        i1 = {x: k for k, x in enumerate(u1)}
        i2 = {x: k for k, x in enumerate(u2)}
        self._a = [i1[x] for x in labels1]
        self._b = [i2[x] for x in labels2]
        self._small = small
        self.dele = [sdel[k] for k in self._a]
        self.ins = [sins[k] for k in self._b]
        vals = [v for r in small for v in r] + list(sdel) + list(sins)
        self.compiled = not pure and fits(vals, len(labels1) + len(labels2))
        if self.compiled:
            import numpy as np

            sub = np.ascontiguousarray(_to_np(small, len(u2))[np.array(self._a)][:, np.array(self._b)])
            self._np = (_vec(self.l1), _vec(self.l2), _vec(self.kr1), _vec(self.kr2),
                        sub, _vec(self.dele), _vec(self.ins))
            l1, l2, kr1, kr2, s, d, i = self._np
            self._td_np = _ckernels.ted(l1, l2, kr1, kr2, s, d, i)
            self.td = _unpack(self._td_np)
        else:
            rows = [small[k] for k in range(len(u1))]
            b = self._b
            per_label = [[r[k] for k in b] for r in rows]
            self._py_sub = [per_label[k] for k in self._a]
            self.td = _pykernels.ted(self.l1, self.l2, self.kr1, self.kr2, self._py_sub, self.dele, self.ins)

    @property
    def distance(self):
        return self.td[-1][-1]

    def sub(self, i: int, j: int):
        return self._small[self._a[i]][self._b[j]]

    def forest(self, i: int, j: int):
        # Tree cells are rewritten with the values they already hold.
        if self.compiled:
            l1, l2, _, _, s, d, ins = self._np
            return _unpack(_ckernels.forest(l1, l2, i, j, s, d, ins, self._td_np))
        return _pykernels.forest(self.l1, self.l2, i, j, self._py_sub, self.dele, self.ins, self.td)


def interval_min(dele, pc, *, pure: bool = False):
    """Interval DP table ``D[i][j]`` over half-open ranges (see the kernels)."""
    n = len(dele)
    if n == 0:
        return [[0]]
    vals = list(dele) + [v for r in pc for v in r]
    if not pure and fits(vals, 2 * n):
        return _unpack(_ckernels.interval_min(_vec(dele), _to_np(pc)))
    return _pykernels.interval_min(dele, pc)


__all__ = ["BACKEND", "backend", "fits", "string_ed", "string_ed_table", "TedTables", "interval_min"]
