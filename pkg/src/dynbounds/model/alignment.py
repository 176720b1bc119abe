"""Tree alignments: validity checking and cost evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .costs import CostTable
from .extint import ExtInt, ext_add
from .tree import Tree

ANCESTRY = 1
PREORDER = 2
REUSE = 3

Alignment = Sequence[tuple[int, int]]


@dataclass(frozen=True)
class Violation:
    clause: int
    i: int
    j: int

    def describe(self) -> str:
        what = {ANCESTRY: "ancestry not preserved", PREORDER: "preorder not preserved",
                REUSE: "node used twice"}[self.clause]
        return f"clause {self.clause} ({what}) at pairs {self.i}, {self.j}"


@dataclass(frozen=True)
class AlignmentReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


class InvalidAlignment(ValueError):
    def __init__(self, report: AlignmentReport):
        self.report = report
        super().__init__("; ".join(v.describe() for v in report.violations[:5]))


def validate_alignment(t1: Tree, t2: Tree, pairs: Alignment, *, first_only: bool = False) -> AlignmentReport:
    """Check the three alignment conditions on every pair of pairs.

    Ancestry is checked in both directions (``v_i`` above ``v_j`` and
    ``v_j`` above ``v_i``); checking one direction alone would admit
    mappings that send a parent/child pair onto two siblings.
    """
    for v, w in pairs:
        if v not in t1 or w not in t2:
            raise KeyError(f"pair ({v}, {w}) references an unknown node")
    out = []
    k = len(pairs)
    anc1, anc2 = t1.is_ancestor, t2.is_ancestor
    pre1, pre2 = t1.pre_rank, t2.pre_rank
    for i in range(k):
        vi, wi = pairs[i]
        for j in range(i + 1, k):
            vj, wj = pairs[j]
            bad = None
            if vi == vj or wi == wj:
                bad = REUSE
            elif anc1(vi, vj) != anc2(wi, wj) or anc1(vj, vi) != anc2(wj, wi):
                bad = ANCESTRY
            elif not anc1(vi, vj) and not anc1(vj, vi):
                if (pre1(vi) < pre1(vj)) != (pre2(wi) < pre2(wj)):
                    bad = PREORDER
            if bad is None:
                continue
            out.append(Violation(bad, i, j))
            if first_only:
                return AlignmentReport(tuple(out))
    return AlignmentReport(tuple(out))


def alignment_cost(t1: Tree, t2: Tree, pairs: Alignment, delta: CostTable, *, check: bool = True) -> ExtInt:
    if check:
        report = validate_alignment(t1, t2, pairs)
        if not report.ok:
            raise InvalidAlignment(report)
    used1 = {v for v, _ in pairs}
    used2 = {w for _, w in pairs}
    terms = []
    for v, w in pairs:
        a, b = t1.label(v), t2.label(w)
        if a != b or not delta.match_free:
            terms.append(delta.sub(a, b))
    terms.extend(delta.delete(t1.label(v)) for v in t1.nodes() if v not in used1)
    terms.extend(delta.insert(t2.label(w)) for w in t2.nodes() if w not in used2)
    return ext_add(*terms)
