"""Node, list and clique gadget strings over the alphabet ``0 1 2 3 $ #``."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from typing import Sequence

from .exact import enumerate_k_cliques, string_ed
from .model import Graph

ALPHABET = "0123$#"


@dataclass(frozen=True)
class GadgetParams:
    n: int
    k: int
    alpha: int
    c_prime: int
    ell: int
    lam1: int
    lam2: int

    @classmethod
    def of(cls, n: int, k: int) -> "GadgetParams":
        alpha = max(1, math.ceil(math.log2(n + 1)))
        c_prime = (n - 1) * (2 * alpha + 1)
        ell = -(-k * k * (c_prime + alpha) // 2)
        lam1 = k * k * (n * (alpha + 1) + ell)
        lam2 = k * k * ((2 * n - 1) * (alpha + 1) + ell)
        return cls(n, k, alpha, c_prime, ell, lam1, lam2)

    @property
    def lam(self) -> int:
        return max(self.lam1, self.lam2)

    @property
    def c(self) -> int:
        return self.c_prime * self.k * self.k

    def as_dict(self) -> dict:
        d = asdict(self)
        d.update(lam=self.lam, c=self.c)
        return d


def encode(v: int, alpha: int) -> str:
    return format(v, f"0{alpha}b")


def _check_vertex(g: Graph, v: int) -> None:
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} outside [1, {g.n}]")


def build_ng(g: Graph, v: int) -> str:
    _check_vertex(g, v)
    a = GadgetParams.of(g.n, 1).alpha
    pad = ("2" * a + "$") * (g.n - 1)
    return pad + encode(v, a) + "$" + pad


def build_lg(g: Graph, u: int) -> str:
    _check_vertex(g, u)
    a = GadgetParams.of(g.n, 1).alpha
    return "".join((encode(w, a) if g.has_edge(u, w) else "3" * a) + "$" for w in g.vertices())


def _as_set(g: Graph, xs: Sequence[int], k: int | None):
    xs = tuple(xs)
    if k is not None and len(xs) != k:
        raise ValueError(f"expected a {k}-set, got {len(xs)} vertices")
    if len(set(xs)) != len(xs):
        raise ValueError("repeated vertex in gadget set")
    for v in xs:
        _check_vertex(g, v)
    return xs


def build_cng(g: Graph, ys: Sequence[int], k: int | None = None) -> str:
    ys = _as_set(g, ys, k)
    ell = GadgetParams.of(g.n, len(ys)).ell
    return "".join((build_ng(g, v) + "#" * ell) * len(ys) for v in ys)


def build_clg(g: Graph, xs: Sequence[int], k: int | None = None) -> str:
    xs = _as_set(g, xs, k)
    ell = GadgetParams.of(g.n, len(xs)).ell
    return "".join(build_lg(g, u) + "#" * ell for u in xs) * len(xs)


def block_pairs(xs: Sequence[int], ys: Sequence[int]):
    """``(u, v)`` for the i-th list block of CLG(xs) against the i-th node block of CNG(ys)."""
    k = len(xs)
    return [(xs[i % k], ys[i // k]) for i in range(k * k)]


def random_graph(n: int, p: float, rng: random.Random, w_max: int | None = None) -> Graph:
    """Erdos-Renyi graph; with ``w_max`` every edge gets a weight in ``[1, w_max]``."""
    if n < 1 or not 0 <= p <= 1:
        raise ValueError("need n >= 1 and density in [0, 1]")
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    w = None if w_max is None else {e: rng.randint(1, w_max) for e in edges}
    return Graph.from_edges(n, edges, w)


def check_node_gadget_claim(g: Graph) -> dict:
    """ed(NG(v), LG(u)) is C' exactly on edges and in [C'+1, C'+alpha] elsewhere."""
    p = GadgetParams.of(g.n, 1)
    ngs = {v: build_ng(g, v) for v in g.vertices()}
    rows, bad = [], []
    for u in g.vertices():
        lg = build_lg(g, u)
        for v in g.vertices():
            d = string_ed(ngs[v], lg)
            adj = g.has_edge(u, v)
            ok = d == p.c_prime if adj else p.c_prime + 1 <= d <= p.c_prime + p.alpha
            row = {"u": u, "v": v, "adjacent": adj, "ed": d}
            rows.append(row)
            if not ok:
                bad.append(row)
    return {"params": p.as_dict(), "rows": rows, "violations": bad}


def check_clique_gadget_lemma(g: Graph, k: int, limit: int | None = None) -> dict:
    """ed(CLG(X), CNG(Y)) is C'k^2 exactly when X lies in N(Y), larger otherwise.

    ``limit`` caps the number of cliques taken from each side.
    """
    p = GadgetParams.of(g.n, k)
    cl = enumerate_k_cliques(g, k)
    if limit is not None:
        cl = cl[:limit]
    clgs = {x: build_clg(g, x) for x in cl}
    cngs = {y: build_cng(g, y) for y in cl}
    rows, bad = [], []
    for x in cl:
        for y in cl:
            d = string_ed(clgs[x], cngs[y])
            adj = all(g.has_edge(a, b) for a in x for b in y)
            ok = d == p.c if adj else d > p.c
            row = {"x": list(x), "y": list(y), "adjacent": adj, "ed": d}
            rows.append(row)
            if not ok:
                bad.append(row)
    return {"params": p.as_dict(), "rows": rows, "violations": bad}
