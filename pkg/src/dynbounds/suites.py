"""Verification suites behind ``verify-all`` and the acceptance tests.

Each check returns a report dict with fixed keys.  Reports hold no timing
data, so a fixed seed gives byte-identical JSON; wall-clock is recorded
by the caller separately.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

from .exact import brute_force_ted, enumerate_k_cliques, min_weight_clique, negative_table, random_tree, ted
from .folding import (
    PairedAlphabet,
    brute_force_folding,
    dyck_ed,
    dyck_of_embedding,
    expand_weighted,
    random_string,
    rna_score,
    rna_score_weighted,
)
from .gadgets import check_clique_gadget_lemma, check_node_gadget_claim, random_graph
from .model import TOP, CostTable, Graph
from .model.io import graph_to_dict
from .online import OnlineParser, closure, online_dyck, online_rna, partition_ok, random_grammar
from .unweighted import build_unweighted_instance, check_unweighted_embedding, run_3kclique_driver
from .weighted import (
    build_base_instance,
    check_dynamic_optimum,
    decode_witness,
    run_4clique_driver,
    run_incremental_driver,
    solve,
)

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"
REPORT_VERSION = 1
CSV_COLUMNS = ("version", "suite", "check", "criterion", "cases", "violations", "verdict")


@dataclass
class RunConfig:
    seed: int = 20240611
    budget_sec: float | None = None
    stress: bool = False
    out: str | None = None
    suites: tuple = ()
    mutate_delta: bool = False  # corrupt one cost entry in the weighted fixtures


class Budget:
    """Cooperative deadline, checked between cases."""

    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


def _rng(cfg: RunConfig, name: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{name}")


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "TOP"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _report(suite, check, criterion, params, cases, violations, skipped=False, notes=None):
    verdict = SKIPPED if skipped else (FAIL if violations or not cases else PASS)
    return _jsonable({"version": REPORT_VERSION, "suite": suite, "check": check, "criterion": criterion,
                      "params": params, "cases": cases, "violations": violations, "verdict": verdict,
                      "notes": notes or []})


def _tiers(counts: dict) -> list:
    return [{"tier": k, "samples": v} for k, v in counts.items()]


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for b, e in enumerate(pairs) if mask >> b & 1])


# gadgets ----------------------------------------------------------------------

def check_node_gadgets(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "node-gadget")
    graphs = [random_graph(rng.randint(1, 7), rng.random(), rng) for _ in range(50)]
    graphs += [Graph.complete(7), Graph.from_edges(7, [])]
    cases, bad = [], []
    for gi, g in enumerate(graphs):
        if budget.expired():
            return _report("gadgets", "node-gadget", 1, {"graphs": len(graphs)}, cases, bad, skipped=True)
        r = check_node_gadget_claim(g)
        cases.append({"graph": gi, "n": g.n, "pairs": len(r["rows"]), "violations": len(r["violations"])})
        bad += [{"graph": graph_to_dict(g), **v} for v in r["violations"]]
    return _report("gadgets", "node-gadget", 1, {"graphs": len(graphs)}, cases, bad)


def check_clique_gadgets(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "clique-gadget")
    graphs = [random_graph(rng.randint(2, 6), rng.uniform(0.3, 1.0), rng) for _ in range(20)]
    cases, bad = [], []
    for gi, g in enumerate(graphs):
        for k in (1, 2):
            if budget.expired():
                return _report("gadgets", "clique-gadget", 2, {"graphs": 20}, cases, bad, skipped=True)
            r = check_clique_gadget_lemma(g, k)
            cases.append({"graph": gi, "n": g.n, "k": k, "pairs": len(r["rows"]),
                          "violations": len(r["violations"])})
            bad += [{"graph": graph_to_dict(g), "k": k, **v} for v in r["violations"]]
    return _report("gadgets", "clique-gadget", 2, {"graphs": 20, "k": [1, 2]}, cases, bad)


# unweighted -------------------------------------------------------------------

def check_uted_embedding(cfg: RunConfig, budget: Budget) -> dict:
    ns = (2, 3) if cfg.stress else (2,)
    cases, bad, skipped = [], [], False
    for n in ns:
        for g in all_graphs(n):
            for Z in enumerate_k_cliques(g, 1):
                if budget.expired():
                    skipped = True
                    break
                inst = build_unweighted_instance(g, 1, Z)
                lhs, obj = check_unweighted_embedding(inst)
                row = {"graph": graph_to_dict(g), "Z": list(Z), "ted": lhs, "objective": obj - inst.D,
                       "D": inst.D, "expected": obj}
                cases.append(row)
                if lhs != obj:
                    bad.append(row)
    notes = [] if cfg.stress else ["stress tier n=3 not requested"]
    return _report("uted", "uted-embedding", 3, {"n": list(ns), "k": 1}, cases, bad, skipped=skipped, notes=notes)


def check_uted_driver(cfg: RunConfig, budget: Budget) -> dict:
    cases, bad = [], []
    for n in (1, 2, 3):
        for g in all_graphs(n):
            if budget.expired():
                return _report("uted", "uted-driver", 4, {"n": [1, 2, 3], "k": 1}, cases, bad, skipped=True)
            r = run_3kclique_driver(g, 1)
            truth = bool(enumerate_k_cliques(g, 3))
            per_round = [row["updates"] for row in r["rounds"]]
            bound = r.get("update_bound")
            row = {"graph": graph_to_dict(g), "answer": r["answer"], "truth": truth, "min_d": r.get("min_d"),
                   "D": r["D"], "threshold": r.get("threshold"), "round_updates": per_round, "bound": bound}
            cases.append(row)
            if r["answer"] != truth or (bound is not None and any(u > bound for u in per_round)):
                bad.append(row)
    return _report("uted", "uted-driver", 4, {"n": [1, 2, 3], "k": 1}, cases, bad)


# weighted ---------------------------------------------------------------------

def _corrupt(inst) -> None:
    """Lower by one the entry of a pair the optimum uses, so the optimum must drop."""
    _, pairs = solve(inst)
    v, w = min(pairs)
    key = (inst.T1.label(v), inst.T2.label(w))
    inst.delta = inst.delta.with_entries({key: inst.delta.cost(*key) - 1})


def _weighted_graph(rng, n_lo, n_hi, w_max=9):
    return random_graph(rng.randint(n_lo, n_hi), rng.uniform(0.4, 1.0), rng, w_max=w_max)


def triangle_free_fixtures() -> list[Graph]:
    c5 = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)], {(1, 2): 3, (2, 3): 1, (3, 4): 4,
                                                                      (4, 5): 1, (1, 5): 5})
    k33 = Graph.from_edges(6, [(u, v) for u in (1, 2, 3) for v in (4, 5, 6)],
                           {(u, v): u + v for u in (1, 2, 3) for v in (4, 5, 6)})
    return [Graph.from_edges(4, [], {}), c5, k33]


def check_wted_base(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "wted-base")
    graphs = []
    while len(graphs) < 30:
        g = _weighted_graph(rng, 3, 6)
        if enumerate_k_cliques(g, 3):
            graphs.append(g)
    cases, bad = [], []
    for gi, g in enumerate(graphs + triangle_free_fixtures()):
        if budget.expired():
            return _report("wted", "wted-base", 5, {"graphs": len(graphs)}, cases, bad, skipped=True)
        inst = build_base_instance(g)
        if cfg.mutate_delta and gi == 0:
            _corrupt(inst)
        M = inst.M
        d, pairs = solve(inst)
        tri, clique = min_weight_clique(g, 3)
        if tri == TOP:
            ok, expected = d > -3 * M * M + M, None
        else:
            expected = -3 * M * M + tri
            ok = d == expected
        w = decode_witness(inst, pairs)
        row = {"graph": graph_to_dict(g), "M": M, "ted": d, "expected": expected, "triangle": list(clique),
               "witness": None if w is None else [w.i, w.j, w.k]}
        cases.append(row)
        if not ok:
            bad.append(row)
    return _report("wted", "wted-base", 5, {"graphs": len(graphs), "triangle_free": 3}, cases, bad)


def check_wted_dynamic(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "wted-dynamic")
    graphs = [_weighted_graph(rng, 4, 7) for _ in range(20)]
    cases, bad = [], []
    for gi, g in enumerate(graphs):
        for x in g.vertices():
            if budget.expired():
                return _report("wted", "wted-dynamic", 6, {"graphs": 20}, cases, bad, skipped=True)
            r = check_dynamic_optimum(g, x)
            w = r["witness"]
            row = {"graph": gi, "x": x, "M": r["M"], "ted": r["ted"], "expected": r["expected"],
                   "valid": r["valid"], "rescored": r["rescored"],
                   "witness": None if w is None else [w.i, w.j, w.k]}
            cases.append(row)
            if not r["holds"]:
                bad.append({**row, "graph": graph_to_dict(g)})
    return _report("wted", "wted-dynamic", 6, {"graphs": 20}, cases, bad)


def check_wted_driver(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "wted-driver")
    graphs = [_weighted_graph(rng, 4, 8) for _ in range(12)]
    graphs += [Graph.complete(4, 1), Graph.complete(8, 2)] + triangle_free_fixtures()
    cases, bad = [], []
    for g in graphs:
        if budget.expired():
            return _report("wted", "wted-driver", 7, {"graphs": len(graphs)}, cases, bad, skipped=True)
        truth, clique = min_weight_clique(g, 4)
        a = run_4clique_driver(g)
        b = run_incremental_driver(g)
        ups = [r["updates"] for r in a["rounds"]]
        inc_ups = [r["updates"] for r in b["rounds"]]
        ok = (a["weight"] == truth == b["weight"] and all(u == 3 for u in ups[1:])
              and all(u == 3 for u in inc_ups[1:]) and b.get("update_kinds", ["InsertLeaf"]) == ["InsertLeaf"])
        if truth != TOP:
            ok = ok and sum(g.weight(u, v) for u, v in itertools.combinations(a["clique"], 2)) == truth
        row = {"graph": graph_to_dict(g), "truth": truth, "clique": list(clique), "driver": a["weight"],
               "driver_clique": a["clique"], "incremental": b["weight"], "round_updates": ups,
               "incremental_updates": inc_ups}
        cases.append(row)
        if not ok:
            bad.append(row)
    return _report("wted", "wted-driver", 7, {"graphs": len(graphs)}, cases, bad)


# folding ----------------------------------------------------------------------

def check_folding(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "folding")
    cases, bad = [], []
    tiers = {"rna-oracle": 0, "weighted-lemma": 0, "dyck-embedding": 0}
    for _ in range(1000):
        nb = rng.randint(1, 3)
        alpha = PairedAlphabet(tuple("abc"[:nb]))
        s = random_string(rng, rng.randint(0, 14), alpha)
        tiers["rna-oracle"] += 1
        if rna_score(s, alpha) != brute_force_folding(s):
            bad.append({"tier": "rna-oracle", "S": " ".join(s)})
    if budget.expired():
        return _report("folding", "folding", 8, {}, _tiers(tiers), bad, skipped=True)
    for _ in range(300):
        alpha = PairedAlphabet(tuple("abc"[:rng.randint(1, 3)]))
        s = random_string(rng, rng.randint(0, 8), alpha)
        w = {b: rng.randint(1, 4) for b in alpha.base}
        tiers["weighted-lemma"] += 1
        v = rna_score_weighted(s, alpha, w)
        if not v == rna_score(expand_weighted(s, w), alpha) == brute_force_folding(s, w):
            bad.append({"tier": "weighted-lemma", "S": " ".join(s), "w": w})
    if budget.expired():
        return _report("folding", "folding", 8, {}, _tiers(tiers), bad, skipped=True)
    for _ in range(100):
        alpha = PairedAlphabet(tuple("abc"[:rng.randint(1, 3)]))
        s = random_string(rng, rng.randint(0, 8), alpha)
        tiers["dyck-embedding"] += 1
        lhs, rhs = dyck_of_embedding(s, alpha), 3 * len(s) - 2 * rna_score(s, alpha)
        if lhs != rhs:
            bad.append({"tier": "dyck-embedding", "S": " ".join(s), "dyck": lhs, "expected": rhs})
    return _report("folding", "folding", 8, {"closer_image": "mirror"}, _tiers(tiers), bad)


# exact solvers ----------------------------------------------------------------

def check_ted(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "ted")
    counts = {"unit": 0, "negative": 0}
    bad = []
    unit = CostTable.unit()
    for i in range(500):
        if budget.expired():
            return _report("ted", "ted-certification", 9, {"pairs": 500}, _tiers(counts), bad, skipped=True)
        t1, t2 = random_tree(rng, rng.randint(1, 7)), random_tree(rng, rng.randint(1, 7))
        kind = "unit" if i % 2 == 0 else "negative"
        delta = unit if kind == "unit" else negative_table(rng)
        counts[kind] += 1
        a, b = ted(t1, t2, delta), brute_force_ted(t1, t2, delta)
        if a != b:
            from .model.io import tree_to_text
            bad.append({"kind": kind, "T1": tree_to_text(t1), "T2": tree_to_text(t2), "ted": a, "brute": b})
    return _report("ted", "ted-certification", 9, {"pairs": 500}, _tiers(counts), bad)


# online -----------------------------------------------------------------------

def check_online(cfg: RunConfig, budget: Budget) -> dict:
    rng = _rng(cfg, "online")
    cases, bad = [], []
    for ci in range(50):
        if budget.expired():
            return _report("online", "online", 10, {}, cases, bad, skipped=True)
        g = random_grammar(rng, rng.randint(1, 6), n_binary=rng.randint(4, 14))
        text = [rng.choice("ab") for _ in range(rng.randint(1, 64))]
        F = closure(g, text)
        parser = OnlineParser(g)
        ok = True
        for t, ch in enumerate(text, start=1):
            got = parser.push(ch)
            if got != g.value(F[0][t]) or not partition_ok(parser.partition(), t):
                ok = False
                bad.append({"case": ci, "grammar": g.to_json(), "stream": "".join(text), "t": t, "online": got,
                            "static": g.value(F[0][t]), "partition": parser.partition()})
                break
        cases.append({"case": ci, "kind": "grammar", "length": len(text), "ok": ok})
    ab = PairedAlphabet.of("a", "b")
    for ci in range(10):
        if budget.expired():
            return _report("online", "online", 10, {}, cases, bad, skipped=True)
        s = random_string(rng, rng.randint(1, 48), ab)
        r = online_rna(s, ab)
        d = online_dyck(s, ab)
        rr = [rna_score(s[:t], ab) for t in range(1, len(s) + 1)]
        dd = [dyck_ed(s[:t], ab) for t in range(1, len(s) + 1)]
        ok = r == rr and d == dd
        cases.append({"case": ci, "kind": "rna+dyck", "length": len(s), "ok": ok})
        if not ok:
            bad.append({"case": ci, "stream": " ".join(s), "rna": r, "rna_oracle": rr, "dyck": d, "dyck_oracle": dd})
    return _report("online", "online", 10, {"grammar_cases": 50, "adapter_cases": 10}, cases, bad)


SUITES = {
    "gadgets": (check_node_gadgets, check_clique_gadgets),
    "uted": (check_uted_embedding, check_uted_driver),
    "wted": (check_wted_base, check_wted_dynamic, check_wted_driver),
    "folding": (check_folding,),
    "ted": (check_ted,),
    "online": (check_online,),
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    """One report per suite; its verdict is the worst of its checks."""
    t0 = time.perf_counter()
    budget = Budget(cfg.budget_sec)
    checks = []
    for fn in SUITES[name]:
        if budget.expired():
            checks.append(_report(name, fn.__name__.removeprefix("check_").replace("_", "-"), None, {}, [], [],
                                  skipped=True, notes=["budget exhausted before start"]))
            continue
        checks.append(fn(cfg, budget))
    verdicts = {c["verdict"] for c in checks}
    verdict = FAIL if FAIL in verdicts else SKIPPED if SKIPPED in verdicts else PASS
    return {"report": {"version": REPORT_VERSION, "suite": name, "seed": cfg.seed, "stress": cfg.stress,
                       "verdict": verdict, "checks": checks},
            "wall_clock": time.perf_counter() - t0}
