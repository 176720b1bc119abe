from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .extint import TOP, ExtInt


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``1..n``.

    ``weights`` is either ``None`` (unweighted) or maps every edge
    ``(u, v)`` with ``u < v`` to a positive integer.
    """

    n: int
    edges: frozenset = frozenset()
    weights: Mapping[tuple[int, int], int] | None = None
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {e} has an endpoint outside [1, {self.n}]")
            norm.add(_key(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.weights is not None:
            w = {_key(*e): int(x) for e, x in self.weights.items()}
            if set(w) != norm:
                raise ValueError("weights must cover exactly the edge set")
            for e, x in w.items():
                if x < 1:
                    raise ValueError(f"edge {e} has non-positive weight {x}")
            object.__setattr__(self, "weights", w)
        adj = [0] * (self.n + 1)
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "_adj", tuple(adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, weights=None) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), weights)

    @classmethod
    def complete(cls, n: int, weight: int | None = None) -> "Graph":
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        w = None if weight is None else {e: weight for e in edges}
        return cls.from_edges(n, edges, w)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def w_max(self) -> int:
        return max(self.weights.values(), default=1) if self.weights else 1

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency_mask(self, v: int) -> int:
        """Neighbour set of ``v`` as a bitset (bit ``u`` set iff ``u ~ v``)."""
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> set[int]:
        m = self._adj[v]
        return {u for u in self.vertices() if m >> u & 1}

    def common_neighbors(self, vs: Iterable[int]) -> set[int]:
        """``N(V')``: vertices adjacent to every member of ``vs``."""
        mask = (1 << (self.n + 1)) - 2
        for v in vs:
            mask &= self._adj[v]
        return {u for u in self.vertices() if mask >> u & 1}

    def weight(self, u: int, v: int) -> ExtInt:
        """Edge weight, TOP for non-edges and for ``u == v``."""
        if not self.has_edge(u, v):
            return TOP
        return self.weights[_key(u, v)] if self.weights else 1
