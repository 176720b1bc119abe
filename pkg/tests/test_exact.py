import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import negative_table, random_tree
from dynbounds.exact import (
    brute_force_ted,
    enumerate_k_cliques,
    min_weight_clique,
    order_theoretic_valid,
    string_ed,
    ted,
    ted_with_alignment,
)
from dynbounds.model import (
    TOP,
    CostTable,
    Graph,
    alignment_cost,
    lab,
    path_gadget,
    single,
    validate_alignment,
)

UNIT = CostTable.unit()


def brute_string_ed(a, b):
    # Levenshtein by exhaustive recursion; only for tiny inputs.
    if not a or not b:
        return len(a) + len(b)
    return min(brute_string_ed(a[1:], b) + 1,
               brute_string_ed(a, b[1:]) + 1,
               brute_string_ed(a[1:], b[1:]) + (a[0] != b[0]))


class TestStringED:
    def test_empty_vs_abc(self):
        assert string_ed("", "abc") == 3

    def test_kitten_sitting(self):
        # Frozen from brute_string_ed.
        assert string_ed("kitten", "sitting") == 3

    def test_identity(self):
        assert string_ed("abcab", "abcab") == 0

    @given(st.text("ab", max_size=7), st.text("ab", max_size=7))
    def test_matches_brute_force(self, a, b):
        assert string_ed(a, b) == brute_string_ed(a, b)

    @given(st.text("abc", max_size=10), st.text("abc", max_size=10), st.text("abc", max_size=10))
    def test_triangle(self, a, b, c):
        assert string_ed(a, c) <= string_ed(a, b) + string_ed(b, c)

    @given(st.text("abc", max_size=10), st.text("abc", max_size=10))
    def test_symmetric(self, a, b):
        assert string_ed(a, b) == string_ed(b, a)

    def test_pure_and_compiled_agree(self):
        rng = random.Random(3)
        for _ in range(50):
            a = "".join(rng.choice("xyz") for _ in range(rng.randint(0, 12)))
            b = "".join(rng.choice("xyz") for _ in range(rng.randint(0, 12)))
            assert string_ed(a, b) == string_ed(a, b, pure=True)

    def test_weighted_costs(self):
        delta = CostTable(5, 1, 2)
        # a -> b is cheaper as delete + insert (3) than substitute (5).
        assert string_ed("a", "b", delta) == 3

    def test_forbidden_substitution(self):
        delta = CostTable(TOP, TOP, TOP)
        assert string_ed("ab", "ab", delta) == 0
        assert string_ed("a", "b", delta) == TOP


class TestTed:
    def test_identity(self, rng):
        t = random_tree(rng, 9)
        assert ted(t, t) == 0

    def test_single_nodes(self):
        assert ted(single("a"), single("b")) == 1

    def test_negative_single(self):
        delta = CostTable(TOP, 0, 0, {(lab("a"), lab("b")): -5}, match_free=False)
        assert ted(single("a"), single("b"), delta) == -5
        assert brute_force_ted(single("a"), single("b"), delta) == -5

    def test_disjoint_alphabet_all_top(self):
        t1 = path_gadget("ab")
        t2 = path_gadget("cde")
        delta = CostTable(TOP, 2, 3)
        assert brute_force_ted(t1, t2, delta) == 2 * 2 + 3 * 3
        assert ted(t1, t2, delta) == 13

    def test_paths_are_strings(self, rng):
        for _ in range(30):
            a = "".join(rng.choice("ab") for _ in range(rng.randint(1, 9)))
            b = "".join(rng.choice("ab") for _ in range(rng.randint(1, 9)))
            assert ted(path_gadget(a), path_gadget(b)) == string_ed(a, b)

    def test_known_small_value(self):
        # f(d(a c(b)) e) vs f(c(d(a b)) e): classical Zhang-Shasha example, distance 2.
        from dynbounds.model.io import tree_from_text

        t1 = tree_from_text("f(d(a c(b)) e)")
        t2 = tree_from_text("f(c(d(a b)) e)")
        assert ted(t1, t2) == 2
        assert brute_force_ted(t1, t2, UNIT) == 2

    def test_agrees_with_brute_force_unit(self, rng):
        for _ in range(60):
            t1 = random_tree(rng, rng.randint(1, 6))
            t2 = random_tree(rng, rng.randint(1, 6))
            assert ted(t1, t2) == brute_force_ted(t1, t2, UNIT)

    def test_agrees_with_brute_force_negative(self, rng):
        for _ in range(60):
            t1 = random_tree(rng, rng.randint(1, 6))
            t2 = random_tree(rng, rng.randint(1, 6))
            delta = negative_table(rng)
            assert ted(t1, t2, delta) == brute_force_ted(t1, t2, delta)

    def test_pure_fallback_agrees(self, rng):
        for _ in range(30):
            t1 = random_tree(rng, rng.randint(1, 12))
            t2 = random_tree(rng, rng.randint(1, 12))
            delta = negative_table(rng, top_default=False)
            assert ted(t1, t2, delta) == ted(t1, t2, delta, pure=True)

    def test_huge_costs_take_exact_path(self):
        big = 2 ** 100
        delta = CostTable(TOP, 0, 0, {(lab("a"), lab("b")): -big}, match_free=False)
        t1 = path_gadget("aa")
        t2 = path_gadget("bb")
        assert ted(t1, t2, delta) == -2 * big

    def test_guard(self, rng):
        with pytest.raises(ValueError):
            brute_force_ted(random_tree(rng, 9), single("a"), UNIT)


class TestAlignmentExtraction:
    def test_identity_all_match(self, rng):
        t = random_tree(rng, 8)
        cost, pairs = ted_with_alignment(t, t)
        assert cost == 0
        assert sorted(pairs) == [(v, v) for v in sorted(t.nodes())]

    def test_rescoring(self, rng):
        for _ in range(200):
            t1 = random_tree(rng, rng.randint(1, 9))
            t2 = random_tree(rng, rng.randint(1, 9))
            delta = negative_table(rng) if rng.random() < 0.5 else UNIT
            cost, pairs = ted_with_alignment(t1, t2, delta)
            assert cost == ted(t1, t2, delta)
            assert validate_alignment(t1, t2, pairs).ok
            assert alignment_cost(t1, t2, pairs, delta) == cost

    def test_deterministic(self, rng):
        t1 = random_tree(rng, 10)
        t2 = random_tree(rng, 10)
        assert ted_with_alignment(t1, t2) == ted_with_alignment(t1, t2)


class TestValidation:
    def test_empty_ok(self, rng):
        assert validate_alignment(random_tree(rng, 3), random_tree(rng, 3), []).ok

    def test_ancestor_to_sibling(self):
        from dynbounds.model.io import tree_from_text

        t1 = tree_from_text("a(b)")
        t2 = tree_from_text("a(b c)")
        r1, c1 = t1.root, t1.children(t1.root)[0]
        k = t2.children(t2.root)
        report = validate_alignment(t1, t2, [(r1, k[0]), (c1, k[1])])
        assert not report.ok and report.violations[0].clause == 1

    def test_matches_order_theoretic_checker(self):
        rng = random.Random(11)
        for _ in range(10_000):
            t1 = random_tree(rng, 5)
            t2 = random_tree(rng, 5)
            k = rng.randint(0, 5)
            pairs = list(zip(rng.sample(range(5), k), rng.sample(range(5), k)))
            if rng.random() < 0.1 and pairs:
                pairs.append((pairs[0][0], rng.randrange(5)))
            assert validate_alignment(t1, t2, pairs).ok == order_theoretic_valid(t1, t2, pairs)

    def test_cost_equals_resummation(self):
        # Exhaustive over all pair sets on trees of size <= 4.
        rng = random.Random(5)
        for _ in range(15):
            t1 = random_tree(rng, rng.randint(1, 4))
            t2 = random_tree(rng, rng.randint(1, 4))
            n1, n2 = sorted(t1.nodes()), sorted(t2.nodes())
            for r in range(0, min(len(n1), len(n2)) + 1):
                for vs in itertools.combinations(n1, r):
                    for ws in itertools.permutations(n2, r):
                        pairs = list(zip(vs, ws))
                        if not order_theoretic_valid(t1, t2, pairs):
                            continue
                        walker = sum(t1.label(v) != t2.label(w) for v, w in pairs)
                        walker += len(n1) - r + len(n2) - r
                        assert alignment_cost(t1, t2, pairs, UNIT) == walker


class TestCliques:
    def test_k4_triangles(self):
        assert len(enumerate_k_cliques(Graph.complete(4), 3)) == 4

    def test_bipartite_triangle_free(self):
        g = Graph.from_edges(6, [(u, v) for u in (1, 2, 3) for v in (4, 5, 6)])
        assert enumerate_k_cliques(g, 3) == []

    def test_k1_all_vertices(self):
        assert enumerate_k_cliques(Graph(3), 1) == [(1,), (2,), (3,)]

    def test_lexicographic(self):
        out = enumerate_k_cliques(Graph.complete(5), 2)
        assert out == sorted(out)

    def test_matrix_recount(self):
        import numpy as np

        rng = random.Random(9)
        for _ in range(20):
            edges = [(u, v) for u in range(1, 10) for v in range(u + 1, 10) if rng.random() < 0.5]
            g = Graph.from_edges(9, edges)
            a = np.zeros((9, 9), dtype=np.int64)
            for u, v in edges:
                a[u - 1, v - 1] = a[v - 1, u - 1] = 1
            triangles = int(np.trace(a @ a @ a)) // 6
            assert len(enumerate_k_cliques(g, 3)) == triangles

    def test_min_weight_k4_ones(self):
        assert min_weight_clique(Graph.complete(4, 1), 4) == (6, (1, 2, 3, 4))

    def test_min_weight_none(self):
        g = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4)], {(1, 2): 1, (2, 3): 1, (3, 4): 1})
        assert min_weight_clique(g, 4) == (TOP, ())

    def test_min_weight_exhaustive(self):
        rng = random.Random(4)
        for _ in range(20):
            edges = [(u, v) for u in range(1, 9) for v in range(u + 1, 9) if rng.random() < 0.7]
            w = {e: rng.randint(1, 10) for e in edges}
            g = Graph.from_edges(8, edges, w)
            best = TOP
            for c in itertools.combinations(range(1, 9), 4):
                if all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2)):
                    best = min(best, sum(g.weight(u, v) for u, v in itertools.combinations(c, 2)))
            assert min_weight_clique(g, 4)[0] == best
