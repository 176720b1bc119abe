import random

import pytest

from dynbounds.exact import enumerate_k_cliques, string_ed
from dynbounds.gadgets import (
    GadgetParams,
    block_pairs,
    build_clg,
    build_cng,
    build_lg,
    build_ng,
    check_clique_gadget_lemma,
    check_node_gadget_claim,
    encode,
    random_graph,
)
from dynbounds.model import Graph

EDGE = Graph.from_edges(2, [(1, 2)])


class TestParams:
    def test_n2_k1(self):
        p = GadgetParams.of(2, 1)
        assert (p.alpha, p.c_prime, p.ell, p.lam1, p.lam2, p.lam, p.c) == (2, 5, 4, 10, 13, 13, 5)

    def test_alpha(self):
        assert [GadgetParams.of(n, 1).alpha for n in (1, 2, 3, 4, 7, 8)] == [1, 2, 2, 3, 3, 4]

    def test_lengths_match_strings(self):
        rng = random.Random(1)
        for n in range(2, 7):
            for k in (1, 2):
                g = random_graph(n, 0.6, rng)
                p = GadgetParams.of(n, k)
                xs = list(range(1, k + 1))
                assert len(build_clg(g, xs)) == p.lam1
                assert len(build_cng(g, xs)) == p.lam2


class TestNodeGadgets:
    def test_ng_example(self):
        assert build_ng(EDGE, 1) == "22$01$22$"

    def test_lg_example(self):
        assert build_lg(EDGE, 2) == "01$33$"

    def test_ed_example(self):
        assert string_ed(build_ng(EDGE, 1), build_lg(EDGE, 2)) == 5

    def test_ng_length_and_bits(self):
        for n in range(1, 17):
            g = Graph.complete(n)
            p = GadgetParams.of(n, 1)
            for v in (1, n):
                s = build_ng(g, v)
                assert len(s) == (2 * n - 1) * (p.alpha + 1)
                assert sum(ch in "01" for ch in s) == p.alpha

    def test_isolated_lg(self):
        assert build_lg(Graph(3), 2) == "33$33$33$"

    def test_range(self):
        with pytest.raises(ValueError):
            build_ng(EDGE, 3)
        with pytest.raises(ValueError):
            build_lg(EDGE, 0)

    def test_encoding_msb_first(self):
        assert encode(1, 3) == "001"
        assert encode(6, 3) == "110"


class TestCliqueGadgets:
    def test_k1_single_block(self):
        p = GadgetParams.of(2, 1)
        assert build_cng(EDGE, [2]) == build_ng(EDGE, 2) + "#" * p.ell

    def test_run_structure(self):
        import re

        g = Graph.complete(5)
        p = GadgetParams.of(5, 2)
        for s in (build_cng(g, [1, 3]), build_clg(g, [2, 4])):
            runs = [len(m) for m in re.findall("#+", s)]
            assert runs == [p.ell] * 4

    def test_blocks_cover_all_pairs(self):
        assert sorted(block_pairs([1, 2], [3, 4])) == [(1, 3), (1, 4), (2, 3), (2, 4)]

    def test_lambda_n2(self):
        assert len(build_clg(EDGE, [1])) == 10
        assert len(build_cng(EDGE, [1])) == 13

    def test_wrong_size(self):
        with pytest.raises(ValueError):
            build_cng(Graph.complete(3), [1, 2], k=3)


class TestClaims:
    def test_complete_graph_c_prime(self):
        r = check_node_gadget_claim(Graph.complete(4))
        assert r["violations"] == []
        assert r["params"]["c_prime"] == 21
        assert all(row["ed"] == 21 for row in r["rows"] if row["u"] != row["v"])

    def test_empty_graph_exceeds(self):
        r = check_node_gadget_claim(Graph(4))
        assert r["violations"] == []
        assert all(row["ed"] > 21 for row in r["rows"])

    def test_random_sweep(self):
        rng = random.Random(2)
        for _ in range(15):
            g = random_graph(rng.randint(2, 7), rng.random(), rng)
            assert check_node_gadget_claim(g)["violations"] == []

    def test_lemma_k1_is_node_claim(self):
        g = random_graph(5, 0.5, random.Random(3))
        r = check_clique_gadget_lemma(g, 1)
        assert r["violations"] == [] and r["params"]["c"] == r["params"]["c_prime"]

    def test_lemma_complete6_k2(self):
        r = check_clique_gadget_lemma(Graph.complete(6), 2, limit=40)
        assert r["violations"] == []
        assert all(row["ed"] == r["params"]["c"] for row in r["rows"] if row["adjacent"])

    def test_lemma_random(self):
        rng = random.Random(4)
        g = random_graph(6, 0.5, rng)
        r = check_clique_gadget_lemma(g, 2)
        assert r["violations"] == []
        for row in r["rows"]:
            x, y = row["x"], row["y"]
            assert row["adjacent"] == all(g.has_edge(a, b) for a in x for b in y)

    def test_cliques_used(self):
        g = Graph.complete(4)
        r = check_clique_gadget_lemma(g, 2)
        assert len(r["rows"]) == len(enumerate_k_cliques(g, 2)) ** 2
