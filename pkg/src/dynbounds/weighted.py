"""Weighted TED instances whose optimum encodes min-weight triangles and 4-cliques.

All matching costs follow the zero-deletion convention: deleting or
inserting any node is free and only aligned pairs are charged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import min_weight_clique, ted_with_alignment
from .model import (
    TOP,
    CostTable,
    Graph,
    InsertLeaf,
    Relabel,
    Tree,
    TreeBuilder,
    alignment_cost,
    lab,
    name_of,
    validate_alignment,
)

INT64_SAFE = 2 ** 60


def choose_M(g: Graph) -> int:
    if g.weights is None:
        raise ValueError("choose_M needs a weighted graph")
    w_max = max(g.weights.values(), default=0)
    M = 64 * (g.n + 2) ** 2 * (w_max + 1)
    if 3 * M * M >= INT64_SAFE:
        raise OverflowError(f"3M^2 = {3 * M * M} exceeds the fixed-width range")
    return M


# label names
def A(i): return f"a{i}"
def A1(i): return f"a'{i}"
def A2(i): return f"a''{i}"
def B(i): return f"b{i}"
def B1(i): return f"b'{i}"
def B2(i): return f"b''{i}"
def C(i): return f"c{i}"
def C1(i): return f"c'{i}"
def C2(i): return f"c''{i}"
def D(i): return f"d{i}"
def D1(i): return f"d'{i}"
def BHAT(x): return f"b^{x}"
def CHAT(x): return f"c^{x}"
def DHAT(x): return f"d^{x}"
BOT = "_|_"


def _wt(g: Graph, u: int, v: int, w_inf):
    w = g.weight(u, v)
    return w_inf if w == TOP else w


def base_costs(g: Graph, M: int, w_inf=None) -> dict:
    """Cost groups (1)-(6) keyed by label-name pairs.

    Groups (2) and (3) keep TOP for missing edges.  The telescoping spine
    groups (4)-(6) subtract weights, so there every missing weight is read
    as the finite ``w_inf`` (default ``M``) to keep the differences defined.
    """
    n = g.n
    wi = M if w_inf is None else w_inf
    out = {}

    def put(a, b, v):
        out[(a, b)] = v

    for k in range(1, n + 1):
        put(B1(k), D1(k), -M * M - 2 * M * k)
        for j in range(1, n + 1):
            w = g.weight(k, j)
            put(B(k + 1), C1(j), TOP if w == TOP else -M * M + M * k + M * j + w)
        for i in range(1, n + 1):
            w = g.weight(i, k)
            put(A1(i), D(k + 1), TOP if w == TOP else -M * M + M * k + M * i + w)
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            put(A(i), C(j), -2 * M + _wt(g, i, j, wi) - _wt(g, i - 1, j - 1, wi))
    for i in range(1, n + 1):
        put(A(i), C(1), -M * (i + 1) + _wt(g, i, 1, wi))
    for j in range(1, n + 1):
        put(A(1), C(j), -M * (j + 1) + _wt(g, 1, j, wi))
    return out


def hat_costs(g: Graph, M: int, x: int, scale: int = 1) -> dict:
    """Groups (7)-(9) for fixed vertex ``x``; ``scale`` multiplies the -M reward.

    Keys are ``(T1 label, T2 label)``, so the d- and c-hat groups are stored flipped.
    """
    out = {}
    for v in range(1, g.n + 1):
        w = g.weight(x, v)
        c = TOP if w == TOP else -M * scale + w
        out[(BHAT(x), C2(v))] = c
        out[(A2(v), DHAT(x))] = c
        out[(B2(v), CHAT(x))] = c
    return out


def to_table(named: dict) -> CostTable:
    return CostTable(TOP, 0, 0, {(lab(a), lab(b)): v for (a, b), v in named.items()}, match_free=False)


@dataclass
class WeightedInstance:
    graph: Graph
    M: int
    T1: Tree
    T2: Tree
    delta: CostTable
    x: int | None = None
    ids: dict = field(default_factory=dict)
    w_inf: int | None = None

    @property
    def hat_nodes(self):
        return tuple(self.ids[h] for h in ("b^", "c^", "d^")) if self.x is not None else ()


@dataclass
class AijkWitness:
    i: int
    j: int
    k: int
    pairs: list

    @property
    def triangle(self):
        return tuple(sorted((self.i, self.j, self.k)))


def _base_trees(g: Graph, dynamic: bool, b2_first: bool = False):
    # b''_i sits between b_{i+1} and b'_i unless b2_first puts it before the spine child.
    n, ids = g.n, {}
    b = TreeBuilder()
    par = None
    for i in range(1, n + 1):
        par = ids[A(i)] = b.add(A(i), par)
    for i in range(1, n + 2):
        par = ids[B(i)] = b.add(B(i), par)
    for i in range(1, n + 1):
        ids[A1(i)] = b.add(A1(i), ids[A(i)])
        if dynamic:
            ids[A2(i)] = b.add(A2(i), ids[A1(i)])
            ids[B2(i)] = b.add(B2(i), ids[B(i)], first=b2_first)
        ids[B1(i)] = b.add(B1(i), ids[B(i)])
    t1_builder = b

    b = TreeBuilder()
    par = None
    for i in range(1, n + 1):
        par = ids[C(i)] = b.add(C(i), par)
    if dynamic:
        par = ids[BOT] = b.add(BOT, par)
    for i in range(1, n + 2):
        par = ids[D(i)] = b.add(D(i), par)
    for i in range(1, n + 1):
        ids[C1(i)] = b.add(C1(i), ids[C(i)], first=True)
        if dynamic:
            ids[C2(i)] = b.add(C2(i), ids[C1(i)])
        ids[D1(i)] = b.add(D1(i), ids[D(i)], first=True)
    return t1_builder, b, ids


def build_base_instance(g: Graph, M: int | None = None, w_inf=None) -> WeightedInstance:
    M = choose_M(g) if M is None else M
    b1, b2, ids = _base_trees(g, dynamic=False)
    return WeightedInstance(g, M, b1.freeze(), b2.freeze(), to_table(base_costs(g, M, w_inf)),
                            None, ids, w_inf)


def _all_hat_costs(g: Graph, M: int) -> dict:
    out = {}
    for x in range(1, g.n + 1):
        out.update(hat_costs(g, M, x))
    return out


def build_dynamic_instance(g: Graph, x: int, M: int | None = None, w_inf=None,
                           b2_first: bool = False) -> WeightedInstance:
    """Extended trees for fixed vertex ``x``.

    ``b''_k`` is placed as the left sibling of ``b'_k``.  With ``b2_first``
    it becomes the first child of ``b_k`` instead; the pair (b''_k, c-hat)
    then crosses (b_{k+1}, c'_j) and can never be used.

    The cost table carries groups (7)-(9) for every vertex, not just ``x``;
    only the hat labels of ``x`` occur in the trees, so the optimum is the
    same and relabelling the hats suffices between rounds.
    """
    if not 1 <= x <= g.n:
        raise ValueError(f"x = {x} outside [1, {g.n}]")
    M = choose_M(g) if M is None else M
    b1, b2, ids = _base_trees(g, dynamic=True, b2_first=b2_first)
    n = g.n
    ids["b^"] = b1.add(BHAT(x), ids[B(n + 1)])
    ids["d^"] = b2.add(DHAT(x), ids[D(n + 1)])
    ids["c^"] = b2.add(CHAT(x), ids[BOT], first=True)
    costs = base_costs(g, M, w_inf)
    costs.update(_all_hat_costs(g, M))
    return WeightedInstance(g, M, b1.freeze(), b2.freeze(), to_table(costs), x, ids, w_inf)


def decode_witness(inst: WeightedInstance, pairs) -> AijkWitness | None:
    """Read ``(i, j, k)`` off the group (1)-(3) pairs; None if any is missing."""
    i = j = k = None
    for v, w in pairs:
        a, b = name_of(inst.T1.label(v)), name_of(inst.T2.label(w))
        if a.startswith("b'") and not a.startswith("b''") and b.startswith("d'"):
            k = int(a[2:])
        elif a.startswith("b") and a[1:].isdigit() and b.startswith("c'") and not b.startswith("c''"):
            j = int(b[2:])
        elif a.startswith("a'") and not a.startswith("a''") and b.startswith("d") and b[1:].isdigit():
            i = int(a[2:])
    if None in (i, j, k):
        return None
    return AijkWitness(i, j, k, sorted(pairs))


def canonical_pairs(inst: WeightedInstance, i: int, j: int, k: int) -> list:
    """The alignment A_{i,j,k}, plus the three hat matchings on a dynamic instance."""
    ids = inst.ids
    p = [(ids[B1(k)], ids[D1(k)]), (ids[B(k + 1)], ids[C1(j)]), (ids[A1(i)], ids[D(k + 1)])]
    s, t = i, j
    while s >= 2 and t >= 2:
        p.append((ids[A(s)], ids[C(t)]))
        s, t = s - 1, t - 1
    p.append((ids[A(s)], ids[C(t)]))
    if inst.x is not None:
        p += [(ids["b^"], ids[C2(j)]), (ids[A2(i)], ids["d^"]), (ids[B2(k)], ids["c^"])]
    return sorted(p)


def solve(inst: WeightedInstance):
    return ted_with_alignment(inst.T1, inst.T2, inst.delta)


def check_base_optimum(g: Graph, M: int | None = None, w_inf=None) -> dict:
    """Optimum of the base instance against the min-weight triangle.

    ``holds`` is the equality when a triangle exists, else the bound
    ``ted >= -3M^2 + M``.
    """
    inst = build_base_instance(g, M, w_inf)
    M = inst.M
    d, pairs = solve(inst)
    tri, clique = min_weight_clique(g, 3)
    if tri == TOP:
        expected, holds = None, d >= -3 * M * M + M
    else:
        expected = -3 * M * M + tri
        holds = d == expected
    return {"ted": d, "expected": expected, "M": M, "holds": holds, "triangle": clique,
            "witness": decode_witness(inst, pairs), "pairs": pairs, "instance": inst}


def six_weight_min(g: Graph, x: int):
    """min over i, j, k of the six weights of {x, i, j, k}, with its argmin."""
    best, arg = TOP, None
    n = g.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                w = [g.weight(i, j), g.weight(i, k), g.weight(j, k),
                     g.weight(x, i), g.weight(x, j), g.weight(x, k)]
                if TOP in w:
                    continue
                s = sum(w)
                if s < best:
                    best, arg = s, (i, j, k)
    return best, arg


def check_dynamic_optimum(g: Graph, x: int, M: int | None = None, w_inf=None,
                          b2_first: bool = False) -> dict:
    """Optimum of the extension for ``x`` against the lightest 4-clique through ``x``.

    Without such a clique ``holds`` is the bound ``ted >= -3M^2 - 2M``.
    The extracted alignment is validated and re-scored either way.
    """
    inst = build_dynamic_instance(g, x, M, w_inf, b2_first)
    M = inst.M
    d, pairs = solve(inst)
    best, arg = six_weight_min(g, x)
    rescored = alignment_cost(inst.T1, inst.T2, pairs, inst.delta)
    valid = validate_alignment(inst.T1, inst.T2, pairs).ok
    if best == TOP:
        expected, holds = None, d >= -3 * M * M - 2 * M
    else:
        expected = -3 * M * M - 3 * M + best
        holds = d == expected
    return {"ted": d, "expected": expected, "M": M, "holds": holds and valid and rescored == d,
            "valid": valid, "rescored": rescored, "argmin": arg,
            "witness": decode_witness(inst, pairs), "pairs": pairs, "instance": inst}


def has_canonical_structure(inst: WeightedInstance, pairs) -> bool:
    """True iff ``pairs`` is exactly A_{i,j,k} (with hat matchings when dynamic)."""
    w = decode_witness(inst, pairs)
    return w is not None and sorted(pairs) == canonical_pairs(inst, w.i, w.j, w.k)


def m_sweep(g: Graph, x: int | None = None, steps: int = 12) -> list[dict]:
    """Halve M from the chosen value and record when the optimum stops being canonical."""
    M = choose_M(g)
    rows = []
    for _ in range(steps):
        inst = build_base_instance(g, M) if x is None else build_dynamic_instance(g, x, M)
        d, pairs = solve(inst)
        rows.append({"M": M, "ted": d, "canonical": has_canonical_structure(inst, pairs)})
        if M == 1:
            break
        M //= 2
    return rows


def round_relabels(inst: WeightedInstance, y: int) -> list:
    """The three hat relabels moving the instance from its vertex to ``y``."""
    ids = inst.ids
    return [("T", Relabel(ids["b^"], lab(BHAT(y)))),
            ("T'", Relabel(ids["c^"], lab(CHAT(y)))),
            ("T'", Relabel(ids["d^"], lab(DHAT(y))))]


def _finish(g: Graph, best, best_x, M):
    """Below the threshold M, re-solve the winning round and read the clique off its alignment."""
    if best is None or best >= M:
        return TOP, ()
    inst = build_dynamic_instance(g, best_x, M)
    w = decode_witness(inst, solve(inst)[1])
    return best, tuple(sorted((best_x, w.i, w.j, w.k)))


def run_4clique_driver(g: Graph, engine_cls=None, *, M: int | None = None) -> dict:
    """One round per vertex x; three relabels between rounds."""
    from .unweighted import RecomputeEngine

    engine_cls = engine_cls or RecomputeEngine
    if g.n == 0:
        return {"weight": TOP, "clique": [], "rounds": []}
    inst = build_dynamic_instance(g, 1, M)
    M = inst.M
    engine = engine_cls(inst.T1, inst.T2, inst.delta)
    offset = 3 * M * M + 3 * M
    rows, best, best_x = [], None, None
    for x in range(1, g.n + 1):
        script = [] if x == 1 else round_relabels(inst, x)
        for side, u in script:
            engine.update(side, u)
        raw = engine.query()
        val = raw + offset
        if best is None or val < best:
            best, best_x = val, x
        rows.append({"round": x, "x": x, "updates": len(script), "raw_query": raw,
                     "offset_value": val, "running_min": best})
    weight, clique = _finish(g, best, best_x, M)
    return {"weight": weight, "clique": list(clique), "rounds": rows, "M": M,
            "total_updates": engine.updates, "total_queries": engine.queries}


def incremental_schedule(g: Graph, order=None):
    """Insert-only build: the two roots, then leaf insertions.

    Returns ``(roots, initial, rounds, delta)``: ``initial`` builds the
    instance for the first vertex from the two single-node trees, and
    ``rounds[l]`` holds the three insertions hanging the next hat nodes
    under the previous ones.
    """
    M = choose_M(g)
    order = list(order or range(1, g.n + 1))
    costs = base_costs(g, M)
    for ell, x in enumerate(order, start=1):
        costs.update(hat_costs(g, M, x, scale=ell))
    ref = build_dynamic_instance(g, order[0], M)
    initial = []
    for side, t in (("T", ref.T1), ("T'", ref.T2)):
        for v in t.preorder()[1:]:
            p = t.parent(v)
            initial.append((side, InsertLeaf(p, t.children(p).index(v), t.label(v), node=v)))
    tips = dict(ref.ids)
    nxt = {"T": ref.T1.next_id(), "T'": ref.T2.next_id()}
    rounds = []
    for x in order[1:]:
        ops = []
        for side, key, name in (("T", "b^", BHAT(x)), ("T'", "c^", CHAT(x)), ("T'", "d^", DHAT(x))):
            node = nxt[side]
            nxt[side] += 1
            ops.append((side, InsertLeaf(tips[key], 0, lab(name), node=node)))
            tips[key] = node
        rounds.append(ops)
    roots = (ref.T1.root, ref.T1.label(ref.T1.root), ref.T2.root, ref.T2.label(ref.T2.root))
    return roots, initial, rounds, to_table(costs), M, order


def run_incremental_driver(g: Graph, engine_cls=None, order=None) -> dict:
    from .unweighted import RecomputeEngine

    engine_cls = engine_cls or RecomputeEngine
    if g.n == 0:
        return {"weight": TOP, "clique": [], "rounds": []}
    (r1, l1, r2, l2), initial, rounds, delta, M, order = incremental_schedule(g, order)
    engine = engine_cls(Tree(r1, {r1: l1}, {r1: ()}), Tree(r2, {r2: l2}, {r2: ()}), delta)
    rows, best, best_x, kinds = [], None, None, set()
    for ell, x in enumerate(order, start=1):
        ops = initial if ell == 1 else rounds[ell - 2]
        for side, u in ops:
            kinds.add(type(u).__name__)
            engine.update(side, u)
        raw = engine.query()
        val = raw + 3 * M * M + 3 * M * ell
        if best is None or val < best:
            best, best_x = val, x
        rows.append({"round": ell, "x": x, "updates": len(ops), "raw_query": raw,
                     "offset_value": val, "running_min": best})
    weight, clique = _finish(g, best, best_x, M)
    return {"weight": weight, "clique": list(clique), "rounds": rows, "M": M,
            "update_kinds": sorted(kinds), "total_updates": engine.updates,
            "total_queries": engine.queries}
