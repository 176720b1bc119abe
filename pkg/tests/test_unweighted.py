import pytest

from dynbounds.exact import enumerate_k_cliques, ted
from dynbounds.model import Graph, Relabel, alignment_cost, validate_alignment
from dynbounds.unweighted import (
    HASH_L,
    HASH_R,
    S,
    RecomputeEngine,
    advance,
    build_unweighted_instance,
    canonical_alignment,
    check_unweighted_embedding,
    claim_offset,
    gadget_objective,
    round_update_script,
    run_3kclique_driver,
    theorem_offset,
)
from dynbounds.model import CostTable

EDGE = Graph.from_edges(2, [(1, 2)])
TRIANGLE = Graph.complete(3)
PATH3 = Graph.from_edges(3, [(1, 2), (2, 3)])
UNIT = CostTable.unit()


class TestShape:
    def test_sizes_n2(self):
        # Counted by hand from the construction: 1 + 2*10 + 442 + 130 + 2*(52+13) + 13 + 130.
        inst = build_unweighted_instance(EDGE, 1, (1,))
        assert inst.sizes() == (854, 877)
        assert build_unweighted_instance(EDGE, 1, (1,), left_pad=4).sizes() == (854, 851)

    def test_closed_form(self):
        for g in (EDGE, TRIANGLE, PATH3):
            for pad in (4, 5):
                inst = build_unweighted_instance(g, 1, (2,), left_pad=pad)
                assert inst.sizes() == inst.closed_form_sizes()

    def test_offsets_n2(self):
        inst = build_unweighted_instance(EDGE, 1, (1,))
        assert inst.D == theorem_offset(inst.params, 2) == 243
        assert claim_offset(inst.params, 2) == 335

    def test_s_run(self):
        inst = build_unweighted_instance(EDGE, 1, (1,))
        run = inst.spans["T.spine.S"]
        assert len(run) == 16 * 13 * 2 + 13 + 1
        assert {inst.T.label_name(v) for v in run} == {S}
        assert inst.T.children(run[-1]) == ()

    def test_leaf_runs(self):
        inst = build_unweighted_instance(EDGE, 1, (2,))
        assert {inst.T.label_name(v) for v in inst.spans["T.1a"]} == {HASH_L}
        assert {inst.T2.label_name(v) for v in inst.spans["T2.2a"]} == {HASH_R}
        assert "".join(inst.T.label_name(v) for v in inst.spans["T.CNG(Z)"]) == "22$10$22$####"

    def test_rejects_non_clique(self):
        with pytest.raises(ValueError):
            build_unweighted_instance(PATH3, 2, (1, 3))
        with pytest.raises(ValueError):
            build_unweighted_instance(Graph(2), 2, (1, 2))


class TestRounds:
    def test_script_within_bound(self):
        for g in (EDGE, TRIANGLE, PATH3):
            inst = build_unweighted_instance(g, 1, (1,))
            bound = inst.params.lam1 + inst.params.lam2
            for Z in inst.cliques:
                script = round_update_script(inst, Z)
                assert len(script) <= bound
                assert all(isinstance(u, Relabel) for _, u in script)

    def test_same_round_is_empty(self):
        inst = build_unweighted_instance(TRIANGLE, 1, (2,))
        assert round_update_script(inst, (2,)) == []

    def test_advance_equals_fresh_build(self):
        for g in (EDGE, TRIANGLE):
            inst = build_unweighted_instance(g, 1, (1,))
            for Z in inst.cliques[1:]:
                nxt = advance(inst, Z)
                fresh = build_unweighted_instance(g, 1, Z)
                assert nxt.T.shape() == fresh.T.shape()
                assert nxt.T2.shape() == fresh.T2.shape()
                inst = nxt


class TestMeasured:
    def test_ted_n2_frozen(self):
        # Frozen from the certified solver (cython and pure agree).
        inst = build_unweighted_instance(EDGE, 1, (1,))
        assert ted(inst.T, inst.T2) == 323
        assert ted(inst.T, inst.T2, pure=True) == 323
        assert gadget_objective(inst)[0] == 16

    def test_embedding_report(self):
        inst = build_unweighted_instance(EDGE, 1, (2,))
        lhs, rhs = check_unweighted_embedding(inst)
        assert (lhs, rhs) == (322, 16 + 243)

    def test_canonical_alignment_valid_and_not_below_ted(self):
        for pad in (4, 5):
            inst = build_unweighted_instance(EDGE, 1, (1,), left_pad=pad)
            d = ted(inst.T, inst.T2)
            for a in range(inst.N):
                for b in range(inst.N):
                    pairs = canonical_alignment(inst, a, b)
                    assert validate_alignment(inst.T, inst.T2, pairs).ok
                    assert alignment_cost(inst.T, inst.T2, pairs, UNIT) >= d

    def test_canonical_cost_n2_frozen(self):
        # X_a = Y_b = (2,), CLG/CNG adjacent: cost equals objective + the summed per-step charges.
        inst = build_unweighted_instance(EDGE, 1, (1,), left_pad=4)
        pairs = canonical_alignment(inst, 1, 0)
        assert alignment_cost(inst.T, inst.T2, pairs, UNIT) == 351 == 16 + claim_offset(inst.params, 2)


class CountingEngine(RecomputeEngine):
    log = []

    def update(self, side, op):
        CountingEngine.log.append(side)
        super().update(side, op)


class TestDriver:
    def test_rounds_and_updates(self):
        CountingEngine.log = []
        out = run_3kclique_driver(TRIANGLE, 1, CountingEngine)
        assert [r["Z"] for r in out["rounds"]] == [[1], [2], [3]]
        assert out["rounds"][0]["updates"] == 0
        assert out["total_updates"] == len(CountingEngine.log)
        assert out["max_round_updates"] <= out["update_bound"] == 36
        assert out["total_queries"] == 3

    def test_min_matches_static(self):
        out = run_3kclique_driver(EDGE, 1)
        fresh = [ted(build_unweighted_instance(EDGE, 1, Z).T, build_unweighted_instance(EDGE, 1, Z).T2)
                 for Z in enumerate_k_cliques(EDGE, 1)]
        assert [r["d"] for r in out["rounds"]] == fresh
        assert out["min_d"] == min(fresh)

    def test_offset_override(self):
        out = run_3kclique_driver(EDGE, 1, offset=10 ** 6)
        assert out["answer"] and out["D"] == 10 ** 6

    def test_no_cliques(self):
        out = run_3kclique_driver(Graph(2), 2)
        assert out["answer"] is False and out["rounds"] == []
