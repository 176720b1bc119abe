"""String edit distance over label sequences."""

from __future__ import annotations

from typing import Sequence

from .. import kernels
from ..model import CostTable, labs

UNIT = CostTable.unit()


def as_labels(s) -> list[int]:
    """Strings are read one character per symbol; sequences of ints pass through."""
    if isinstance(s, str):
        return labs(s)
    return list(s)


def string_ed(a, b, delta: CostTable | None = None, *, pure: bool = False):
    return kernels.string_ed(as_labels(a), as_labels(b), delta or UNIT, pure=pure)


def string_ed_row(a, b, delta: CostTable | None = None):
    """Last row of the prefix DP: ``ed(a, b[:j])`` for every ``j``."""
    return kernels.string_ed_table(as_labels(a), as_labels(b), delta or UNIT)[-1]


def string_alignment(a: Sequence, b: Sequence, delta: CostTable | None = None):
    """One optimal alignment as ``(i, j)`` position pairs, substitutions first on ties."""
    delta = delta or UNIT
    la, lb = as_labels(a), as_labels(b)
    d = kernels.string_ed_table(la, lb, delta)
    i, j = len(la), len(lb)
    pairs = []
    while i > 0 or j > 0:
        if i > 0 and j > 0 and d[i][j] == d[i - 1][j - 1] + delta.sub(la[i - 1], lb[j - 1]):
            pairs.append((i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and d[i][j] == d[i - 1][j] + delta.delete(la[i - 1]):
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return d[-1][-1], pairs
