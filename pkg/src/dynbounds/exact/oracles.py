"""Slow, independent reference implementations used to certify the solvers."""

from __future__ import annotations

import random

from ..model import TOP, CostTable, Tree, TreeBuilder, lab

BRUTE_TED_LIMIT = 8


def _ancestor_matrix(t: Tree):
    # Walk parent links; no traversal ranks involved.
    anc = {v: set() for v in t.nodes()}
    for v in t.nodes():
        p = t.parent(v)
        while p is not None:
            anc[v].add(p)
            p = t.parent(p)
    return anc


def _preorder_ranks(t: Tree):
    ranks = {}

    def visit(v):
        ranks[v] = len(ranks)
        for c in t.children(v):
            visit(c)

    visit(t.root)
    return ranks


class _Order:
    def __init__(self, t: Tree):
        self.anc = _ancestor_matrix(t)
        self.pre = _preorder_ranks(t)

    def above(self, u, v):
        return u in self.anc[v]


def _compatible(o1: _Order, o2: _Order, v1, w1, v2, w2) -> bool:
    if v1 == v2 or w1 == w2:
        return False
    if o1.above(v1, v2) != o2.above(w1, w2) or o1.above(v2, v1) != o2.above(w2, w1):
        return False
    if not o1.above(v1, v2) and not o1.above(v2, v1):
        return (o1.pre[v1] < o1.pre[v2]) == (o2.pre[w1] < o2.pre[w2])
    return True


def order_theoretic_valid(t1: Tree, t2: Tree, pairs) -> bool:
    """Second opinion on alignment validity from ancestor sets and preorder ranks."""
    o1, o2 = _Order(t1), _Order(t2)
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            if not _compatible(o1, o2, *pairs[a], *pairs[b]):
                return False
    return True


def enumerate_alignments(t1: Tree, t2: Tree):
    """Every valid alignment, each as a list of pairs in ``t1`` preorder."""
    if len(t1) > BRUTE_TED_LIMIT or len(t2) > BRUTE_TED_LIMIT:
        raise ValueError(f"exhaustive enumeration is limited to {BRUTE_TED_LIMIT} nodes per tree")
    o1, o2 = _Order(t1), _Order(t2)
    vs = sorted(t1.nodes(), key=o1.pre.__getitem__)
    ws = sorted(t2.nodes(), key=o2.pre.__getitem__)
    chosen: list = []

    def rec(idx):
        if idx == len(vs):
            yield list(chosen)
            return
        yield from rec(idx + 1)
        v = vs[idx]
        for w in ws:
            if all(_compatible(o1, o2, a, b, v, w) for a, b in chosen):
                chosen.append((v, w))
                yield from rec(idx + 1)
                chosen.pop()

    yield from rec(0)


def alignment_total(t1: Tree, t2: Tree, pairs, delta: CostTable):
    used1 = {v for v, _ in pairs}
    used2 = {w for _, w in pairs}
    total = 0
    for v, w in pairs:
        a, b = t1.label(v), t2.label(w)
        total += 0 if (a == b and delta.match_free) else delta.sub(a, b)
    for v in t1.nodes():
        if v not in used1:
            total += delta.delete(t1.label(v))
    for w in t2.nodes():
        if w not in used2:
            total += delta.insert(t2.label(w))
    return total


def brute_force_ted(t1: Tree, t2: Tree, delta: CostTable):
    return min(alignment_total(t1, t2, a, delta) for a in enumerate_alignments(t1, t2))


def random_tree(rng: random.Random, size: int, alphabet="abc") -> Tree:
    """Uniform random attachment: each new node picks an existing parent."""
    b = TreeBuilder()
    nodes = [b.add(rng.choice(alphabet))]
    for _ in range(size - 1):
        nodes.append(b.add(rng.choice(alphabet), rng.choice(nodes)))
    return b.freeze()


def negative_table(rng: random.Random, alphabet="abc", top_default=True) -> CostTable:
    """Free indels, some negative substitutions, everything else forbidden (or small)."""
    entries = {}
    for x in alphabet:
        for y in alphabet:
            if rng.random() < 0.6:
                entries[(lab(x), lab(y))] = rng.randint(-9, 5)
    return CostTable(TOP if top_default else rng.randint(0, 3), 0, 0, entries, match_free=False)
