"""Tree edit distance as minimum-cost tree alignment (Zhang-Shasha)."""

from __future__ import annotations

from ..kernels import TedTables
from ..model import CostTable, Tree

UNIT = CostTable.unit()


def ted(t1: Tree, t2: Tree, delta: CostTable | None = None, *, pure: bool = False):
    return TedTables(t1, t2, delta or UNIT, pure=pure).distance


def ted_with_alignment(t1: Tree, t2: Tree, delta: CostTable | None = None, *, pure: bool = False):
    """Distance plus one optimal alignment, as pairs sorted by node of ``t1``.

    Ties are broken the same way every time: align the two current nodes
    first, then delete from ``t1``, then insert from ``t2``.
    """
    tt = TedTables(t1, t2, delta or UNIT, pure=pure)
    l1, l2, td = tt.l1, tt.l2, tt.td
    pairs = []
    stack = [(len(l1) - 1, len(l2) - 1)]
    while stack:
        i, j = stack.pop()
        fd = tt.forest(i, j)
        li, lj = l1[i], l2[j]
        x, y = i - li + 1, j - lj + 1
        while x > 0 or y > 0:
            if x == 0:
                y -= 1
                continue
            if y == 0:
                x -= 1
                continue
            xi, yj = li + x - 1, lj + y - 1
            cur = fd[x][y]
            if l1[xi] == li and l2[yj] == lj:
                if cur == fd[x - 1][y - 1] + tt.sub(xi, yj):
                    pairs.append((xi, yj))
                    x, y = x - 1, y - 1
                    continue
            else:
                p, q = l1[xi] - li, l2[yj] - lj
                if cur == fd[p][q] + td[xi][yj]:
                    stack.append((xi, yj))
                    x, y = p, q
                    continue
            if cur == fd[x - 1][y] + tt.dele[xi]:
                x -= 1
            else:
                y -= 1
    o1, o2 = tt.order1, tt.order2
    return tt.distance, sorted((o1[a], o2[b]) for a, b in pairs)
