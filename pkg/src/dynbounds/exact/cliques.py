"""k-clique enumeration by bitset backtracking."""

from __future__ import annotations

from itertools import combinations

from ..model import TOP, Graph


def enumerate_k_cliques(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All k-cliques as sorted tuples, in lexicographic order."""
    if k < 1 or k > g.n:
        return []
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []
    full = (1 << (g.n + 1)) - 2

    def rec(cands: int):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        need = k - len(chosen)
        while cands and cands.bit_count() >= need:
            low = cands & -cands
            v = low.bit_length() - 1
            cands ^= low
            chosen.append(v)
            rec(cands & g.adjacency_mask(v))
            chosen.pop()

    rec(full)
    return out


def clique_weight(g: Graph, c) -> int:
    return sum(g.weight(u, v) for u, v in combinations(c, 2))


def min_weight_clique(g: Graph, k: int):
    """``(weight, clique)`` of a lightest k-clique; ``(TOP, ())`` when none exists."""
    best, arg = TOP, ()
    for c in enumerate_k_cliques(g, k):
        w = clique_weight(g, c)
        if w < best:
            best, arg = w, c
    return best, arg
