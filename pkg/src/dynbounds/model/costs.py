from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .extint import TOP, ExtInt, normalize

# Label id standing in for the empty symbol in cost lookups.
EPS = -1


@dataclass(frozen=True)
class CostTable:
    """Cost function over ``(label | EPS) x (label | EPS)``.

    Lookups fall back to a per-kind default (substitution, deletion,
    insertion).  With ``match_free`` set, aligning two equal labels costs 0
    regardless of the entries.
    """

    sub_default: ExtInt = 1
    del_default: ExtInt = 1
    ins_default: ExtInt = 1
    entries: Mapping[tuple[int, int], ExtInt] = field(default_factory=dict)
    match_free: bool = True

    @classmethod
    def unit(cls) -> "CostTable":
        return cls()

    @classmethod
    def uniform(cls, default: ExtInt, entries=None, match_free: bool = True) -> "CostTable":
        return cls(default, default, default, dict(entries or {}), match_free)

    def with_entries(self, entries: Mapping) -> "CostTable":
        merged = dict(self.entries)
        merged.update(entries)
        return CostTable(self.sub_default, self.del_default, self.ins_default, merged, self.match_free)

    def cost(self, a: int, b: int) -> ExtInt:
        if a == b and self.match_free and a != EPS:
            return 0
        try:
            return self.entries[(a, b)]
        except KeyError:
            pass
        if a == EPS:
            return self.ins_default
        if b == EPS:
            return self.del_default
        return self.sub_default

    def sub(self, a: int, b: int) -> ExtInt:
        return self.cost(a, b)

    def delete(self, a: int) -> ExtInt:
        return self.cost(a, EPS)

    def insert(self, b: int) -> ExtInt:
        return self.cost(EPS, b)

    def dense(self, labels1: Sequence[int], labels2: Sequence[int]):
        """Per-position cost arrays for two label sequences.

        Returns ``(sub, dele, ins)`` where ``sub[i][j]`` is the cost of
        aligning position ``i`` with position ``j``.  Work is proportional to
        the number of distinct labels, not positions, before expansion.
        """
        u1 = sorted(set(labels1))
        u2 = sorted(set(labels2))
        i1 = {x: k for k, x in enumerate(u1)}
        i2 = {x: k for k, x in enumerate(u2)}
        small = [[self.cost(a, b) for b in u2] for a in u1]
        rows = {a: [small[i1[a]][i2[b]] for b in labels2] for a in u1}
        sub = [rows[a] for a in labels1]
        dele = [self.delete(a) for a in labels1]
        ins = [self.insert(b) for b in labels2]
        return sub, dele, ins

    def dense_labels(self, labels1: Sequence[int], labels2: Sequence[int]):
        """Label-level matrices: ``(u1, u2, sub, dele, ins)`` over distinct labels."""
        u1 = sorted(set(labels1))
        u2 = sorted(set(labels2))
        sub = [[self.cost(a, b) for b in u2] for a in u1]
        return u1, u2, sub, [self.delete(a) for a in u1], [self.insert(b) for b in u2]

    def finite_values(self):
        vals = [self.sub_default, self.del_default, self.ins_default, *self.entries.values()]
        return [normalize(v) for v in vals if v != TOP]
