"""Caterpillar instances encoding 3k-clique detection in unit-cost TED.

``T`` carries every CLG(X) on its spine and CNG(X) hanging to the right;
``T'`` carries every CNG(Y) on its spine and CLG(Y) hanging to the left.
The round clique Z appears once in each tree, as CNG(Z) left of the last
CLG node in ``T`` and CLG(Z) right of the last CNG node in ``T'``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .exact import enumerate_k_cliques, string_alignment, string_ed, ted
from .gadgets import GadgetParams, build_clg, build_cng
from .model import CostTable, Graph, Relabel, Tree, TreeBuilder, apply_update, lab

ROOT = "<$>"
S = "<S>"
HASH_L = "#_L"
HASH_R = "#_R"
UNIT = CostTable.unit()


def theorem_offset(p: GadgetParams, n_cliques: int) -> int:
    """The offset D = 12 lam N - lam2 N - lam1 N - lam2 - lam1 as stated with the equality."""
    lam, l1, l2, N = p.lam, p.lam1, p.lam2, n_cliques
    return 12 * lam * N - l2 * N - l1 * N - l2 - l1


def claim_offset(p: GadgetParams, n_cliques: int) -> int:
    """The offset obtained by summing the per-step charges of the canonical alignment."""
    lam, l1, l2, N = p.lam, p.lam1, p.lam2, n_cliques
    return 12 * lam * N + l1 * N + l2 * N - l1 - l2


@dataclass
class UnweightedInstance:
    graph: Graph
    k: int
    params: GadgetParams
    cliques: list
    Z: tuple
    T: Tree
    T2: Tree
    D: int
    left_pad: int
    spans: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.cliques)

    def sizes(self) -> tuple[int, int]:
        return len(self.T), len(self.T2)

    def closed_form_sizes(self) -> tuple[int, int]:
        p, N = self.params, self.N
        lam, l1, l2 = p.lam, p.lam1, p.lam2
        srun = 16 * lam * N + lam + 1
        t1 = 1 + N * l1 + srun + 5 * lam * N + N * (4 * lam + l2) + l2 + 5 * lam * N
        t2 = 1 + N * l2 + srun + 5 * lam * N + N * (l1 + self.left_pad * lam) + 5 * lam * N + l1
        return t1, t2


def build_unweighted_instance(g: Graph, k: int, Z, *, left_pad: int = 5) -> UnweightedInstance:
    """Build both trees for round clique ``Z``.

    ``left_pad`` is the multiple of lambda used for the #_L run hung under each
    CNG(Y) in ``T'``: the written definition uses 5, the figure shows 4.
    """
    cliques = enumerate_k_cliques(g, k)
    if not cliques:
        raise ValueError(f"graph has no {k}-clique")
    Z = tuple(sorted(Z))
    if Z not in cliques:
        raise ValueError(f"{Z} is not a {k}-clique")
    p = GadgetParams.of(g.n, k)
    lam, N = p.lam, len(cliques)
    srun = 16 * lam * N + lam + 1
    spans: dict = {}

    # T
    b = TreeBuilder()
    root = b.add(ROOT)
    spans["T.1a"] = b.add_leaves(root, [HASH_L] * (5 * lam * N))
    par, clg_ids = root, []
    for X in cliques:
        ids = b.add_path(build_clg(g, X), par)
        clg_ids.append(ids)
        par = ids[-1]
    spans["T.spine.S"] = b.add_path([S] * srun, par)
    spans["T.clg"] = clg_ids
    rs = []
    for X, ids in zip(cliques, clg_ids):
        cng = b.add_leaves(ids[-1], [HASH_R] * (4 * lam) + list(build_cng(g, X)))
        rs.append(cng)
    spans["T.1b"] = rs
    c1 = b.add_leaves(clg_ids[-1][-1], list(build_cng(g, Z)) + [HASH_L] * (5 * lam * N), first=True)
    spans["T.CNG(Z)"] = c1[:p.lam2]
    spans["T.1c.hash"] = c1[p.lam2:]
    T = b.freeze()

    # T'
    b = TreeBuilder()
    root = b.add(ROOT)
    par, cng_ids = root, []
    for Y in cliques:
        ids = b.add_path(build_cng(g, Y), par)
        cng_ids.append(ids)
        par = ids[-1]
    spans["T2.spine.S"] = b.add_path([S] * srun, par)
    spans["T2.cng"] = cng_ids
    spans["T2.2a"] = b.add_leaves(root, [HASH_R] * (5 * lam * N))
    ls = []
    for Y, ids in zip(cliques, cng_ids):
        ls.append(b.add_leaves(ids[-1], list(build_clg(g, Y)) + [HASH_L] * (left_pad * lam), first=True))
    spans["T2.2b"] = ls
    c2 = b.add_leaves(cng_ids[-1][-1], [HASH_R] * (5 * lam * N) + list(build_clg(g, Z)))
    spans["T2.2c.hash"] = c2[:5 * lam * N]
    spans["T2.CLG(Z)"] = c2[5 * lam * N:]
    T2 = b.freeze()

    return UnweightedInstance(g, k, p, cliques, Z, T, T2, theorem_offset(p, N), left_pad, spans)


def round_update_script(inst: UnweightedInstance, Z_next) -> list:
    """Relabels turning CNG(Z) in ``T`` and CLG(Z) in ``T'`` into the gadgets of ``Z_next``.

    Relabels to the label a node already has are left out.
    """
    Z_next = tuple(sorted(Z_next))
    if Z_next not in inst.cliques:
        raise ValueError(f"{Z_next} is not a {inst.k}-clique")
    script = []
    for side, tree, ids, s in (
        ("T", inst.T, inst.spans["T.CNG(Z)"], build_cng(inst.graph, Z_next)),
        ("T'", inst.T2, inst.spans["T2.CLG(Z)"], build_clg(inst.graph, Z_next)),
    ):
        for v, ch in zip(ids, s):
            x = lab(ch)
            if tree.label(v) != x:
                script.append((side, Relabel(v, x)))
    return script


def advance(inst: UnweightedInstance, Z_next) -> UnweightedInstance:
    """The instance of the next round, obtained by applying its update script."""
    T, T2 = inst.T, inst.T2
    for side, u in round_update_script(inst, Z_next):
        if side == "T":
            T = apply_update(T, u)
        else:
            T2 = apply_update(T2, u)
    return UnweightedInstance(inst.graph, inst.k, inst.params, inst.cliques, tuple(sorted(Z_next)),
                              T, T2, inst.D, inst.left_pad, inst.spans)


def gadget_objective(inst: UnweightedInstance):
    """min over X, Y of ed(CLG X, CNG Y) + ed(CNG X, CLG Z) + ed(CLG Y, CNG Z), with its argmin."""
    g, Z = inst.graph, inst.Z
    clg_z, cng_z = build_clg(g, Z), build_cng(g, Z)
    first = {X: string_ed(build_cng(g, X), clg_z) for X in inst.cliques}
    last = {Y: string_ed(build_clg(g, Y), cng_z) for Y in inst.cliques}
    best, arg = None, None
    for X in inst.cliques:
        cx = build_clg(g, X)
        for Y in inst.cliques:
            v = string_ed(cx, build_cng(g, Y)) + first[X] + last[Y]
            if best is None or v < best:
                best, arg = v, (X, Y)
    return best, arg


def check_unweighted_embedding(inst: UnweightedInstance) -> tuple[int, int]:
    """``(ted(T, T'), objective + D)``; the claimed equality is ``lhs == rhs``."""
    lhs = ted(inst.T, inst.T2, UNIT)
    obj, _ = gadget_objective(inst)
    return lhs, obj + inst.D


def canonical_alignment(inst: UnweightedInstance, a: int, b: int) -> list[tuple[int, int]]:
    """The alignment pairing CLG(X_a) with CNG(Y_b) on the spines.

    Roots and S-runs are matched, the three gadget pairs are aligned as
    strings, the remaining right leaves of ``T`` go onto #_R runs of ``T'``
    (above X_a onto the root's run, the rest onto the run under the last CNG),
    the remaining left leaves of ``T'`` go onto #_L runs of ``T`` likewise,
    and everything else is deleted.  ``a`` and ``b`` index ``inst.cliques``.
    """
    g, sp, N = inst.graph, inst.spans, inst.N
    X, Y = inst.cliques[a], inst.cliques[b]
    pairs = [(inst.T.root, inst.T2.root)]
    pairs += list(zip(sp["T.spine.S"], sp["T2.spine.S"]))

    def strings(ids1, s1, ids2, s2):
        _, al = string_alignment(s1, s2)
        return [(ids1[i], ids2[j]) for i, j in al]

    pairs += strings(sp["T.clg"][a], build_clg(g, X), sp["T2.cng"][b], build_cng(g, Y))
    lam = inst.params.lam
    r_x = sp["T.1b"][a]
    pairs += strings(r_x[4 * lam:], build_cng(g, X), sp["T2.CLG(Z)"], build_clg(g, inst.Z))
    l_y = sp["T2.2b"][b]
    l1 = inst.params.lam1
    pairs += strings(sp["T.CNG(Z)"], build_cng(g, inst.Z), l_y[:l1], build_clg(g, Y))

    # Right leaves in T preorder: deepest attachment first.
    below = [v for i in range(N - 1, a, -1) for v in sp["T.1b"][i]] + r_x[:4 * lam]
    above = [v for i in range(a - 1, -1, -1) for v in sp["T.1b"][i]]
    pairs += list(zip(below, sp["T2.2c.hash"]))
    pairs += list(zip(above, sp["T2.2a"]))
    # Left leaves in T' preorder: shallowest attachment first.
    up = [w for i in range(b) for w in sp["T2.2b"][i]]
    down = l_y[l1:] + [w for i in range(b + 1, N) for w in sp["T2.2b"][i]]
    pairs += [(v, w) for w, v in zip(up, sp["T.1a"])]
    pairs += [(v, w) for w, v in zip(down, sp["T.1c.hash"])]
    return sorted(pairs)


class DynamicTedEngine:
    """Interface: ``update`` applies one tree update, ``query`` returns the current TED."""

    def __init__(self, T: Tree, T2: Tree, delta: CostTable | None = None):
        self.trees = {"T": T, "T'": T2}
        self.delta = delta or UNIT
        self.updates = 0
        self.queries = 0

    def update(self, side: str, op) -> None:
        self.trees[side] = apply_update(self.trees[side], op)
        self.updates += 1

    def query(self):
        raise NotImplementedError


class RecomputeEngine(DynamicTedEngine):
    """Reference engine: recomputes the static distance on every query."""

    def query(self):
        self.queries += 1
        return ted(self.trees["T"], self.trees["T'"], self.delta)


def run_3kclique_driver(g: Graph, k: int, engine_cls=RecomputeEngine, *, offset: int | None = None,
                        left_pad: int = 5) -> dict:
    """One round per k-clique Z; answers yes iff min_Z d_Z - D <= 3C.

    ``offset`` overrides D (defaults to the stated formula).
    """
    cliques = enumerate_k_cliques(g, k)
    if not cliques:
        return {"answer": False, "rounds": [], "total_updates": 0, "total_queries": 0, "D": None}
    inst = build_unweighted_instance(g, k, cliques[0], left_pad=left_pad)
    D = inst.D if offset is None else offset
    engine = engine_cls(inst.T, inst.T2, UNIT)
    rows, best = [], None
    for r, Z in enumerate(cliques):
        t0 = time.perf_counter()
        script = [] if r == 0 else round_update_script(inst, Z)
        for side, u in script:
            engine.update(side, u)
        if r:
            inst = advance(inst, Z)
        d = engine.query()
        rows.append({"round": r, "Z": list(Z), "updates": len(script), "d": d,
                     "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)})
        best = d if best is None else min(best, d)
    c = inst.params.c
    return {"answer": best - D <= 3 * c, "min_d": best, "D": D, "threshold": 3 * c, "rounds": rows,
            "total_updates": engine.updates, "total_queries": engine.queries,
            "max_round_updates": max(row["updates"] for row in rows),
            "update_bound": inst.params.lam1 + inst.params.lam2}
