import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_tree
from dynbounds.model import (
    TOP,
    CostTable,
    Delete,
    Graph,
    InsertLeaf,
    InsertParent,
    InvalidAlignment,
    Relabel,
    TreeError,
    alignment_cost,
    apply_script,
    apply_update,
    ext_add,
    ext_min,
    inverse_update,
    lab,
    left_attach,
    path_gadget,
    right_attach,
    single,
)
from dynbounds.model import io
from dynbounds.model.tree import path_nodes

UNIT = CostTable.unit()

exts = st.one_of(st.integers(-(2 ** 127), 2 ** 127), st.just(TOP))


class TestExtInt:
    @given(exts, exts, exts)
    def test_associative(self, a, b, c):
        assert ext_add(ext_add(a, b), c) == ext_add(a, ext_add(b, c))

    @given(exts)
    def test_top_absorbs(self, a):
        assert ext_add(a, TOP) == TOP
        assert ext_min([a, TOP]) == a

    def test_empty_min_is_top(self):
        assert ext_min([]) == TOP


class TestGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_range(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 4)])

    def test_rejects_bad_weight(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(1, 2)], {(1, 2): 0})

    def test_weight_top_for_non_edges(self):
        g = Graph.from_edges(3, [(1, 2)], {(1, 2): 4})
        assert g.weight(2, 1) == 4
        assert g.weight(1, 3) == TOP
        assert g.weight(2, 2) == TOP

    def test_json_roundtrip(self, tmp_path):
        g = Graph.from_edges(4, [(1, 2), (3, 4)], {(1, 2): 2, (3, 4): 7})
        io.dump_graph(g, tmp_path / "g.json")
        assert io.load_graph(tmp_path / "g.json") == g
        d = json.loads((tmp_path / "g.json").read_text())
        assert d["weights"] == {"1-2": 2, "3-4": 7}


class TestAlignmentCost:
    def test_identical_single(self):
        t = single("a")
        assert alignment_cost(t, t, [(0, 0)], UNIT) == 0

    def test_forced_substitution(self):
        assert alignment_cost(single("a"), single("b"), [(0, 0)], UNIT) == 1

    def test_invalid_rejected_with_report(self):
        t1 = path_gadget("ab")
        t2 = right_attach(single("a"), 0, "bc")
        with pytest.raises(InvalidAlignment) as e:
            alignment_cost(t1, t2, [(0, 1), (1, 2)], UNIT)
        v = e.value.report.violations[0]
        assert (v.clause, v.i, v.j) == (1, 0, 1)

    def test_reuse_reported(self):
        t = path_gadget("ab")
        with pytest.raises(InvalidAlignment) as e:
            alignment_cost(t, t, [(0, 0), (1, 0)], UNIT)
        assert e.value.report.violations[0].clause == 3

    def test_unknown_node(self):
        with pytest.raises(KeyError):
            alignment_cost(single("a"), single("a"), [(0, 5)], UNIT)

    def test_match_free_flag(self):
        strict = CostTable(1, 1, 1, {(lab("a"), lab("a")): 7}, match_free=False)
        assert alignment_cost(single("a"), single("a"), [(0, 0)], strict) == 7


class TestBuilders:
    def test_path_single(self):
        t = path_gadget("a")
        assert len(t) == 1 and t.label_name(t.root) == "a"

    def test_path_abc(self):
        t = path_gadget("abc")
        assert [t.label_name(v) for v in path_nodes(t)] == ["a", "b", "c"]

    def test_path_empty_rejected(self):
        with pytest.raises(TreeError):
            path_gadget("")

    def test_path_lengths(self, rng):
        for _ in range(100):
            s = "".join(rng.choice("xyz") for _ in range(rng.randint(1, 30)))
            assert len(path_gadget(s)) == len(s)

    def test_right_attach(self):
        t = right_attach(single("r"), 0, "xy")
        assert [t.label_name(c) for c in t.children(0)] == ["x", "y"]

    def test_left_then_right(self):
        t = right_attach(single("r"), 0, "m")
        t = left_attach(t, 0, "ab")
        t = right_attach(t, 0, "yz")
        assert [t.label_name(c) for c in t.children(0)] == ["a", "b", "m", "y", "z"]

    def test_preorder_spine_then_attachments(self):
        t = path_gadget("pq")
        t = left_attach(t, 0, "L")
        t = right_attach(t, 0, "R")
        assert [t.label_name(v) for v in t.preorder()] == ["p", "L", "q", "R"]

    def test_unknown_node(self):
        with pytest.raises(TreeError):
            right_attach(single("a"), 3, "x")

    def test_text_roundtrip(self, rng):
        for _ in range(20):
            t = random_tree(rng, rng.randint(1, 15))
            back = io.tree_from_text(io.tree_to_text(t))
            assert back.shape() == t.shape()

    def test_nested_roundtrip(self, rng, tmp_path):
        t = random_tree(rng, 12)
        io.dump_tree(t, tmp_path / "t.json")
        assert io.load_tree(tmp_path / "t.json").shape() == t.shape()

    def test_deep_tree_roundtrip(self):
        t = path_gadget("ab" * 2000)
        assert io.tree_from_nested(io.tree_to_nested(t)).shape() == t.shape()

    def test_quoted_labels(self):
        t = path_gadget(["#_L", "a b", "("])
        assert io.tree_from_text(io.tree_to_text(t)).shape() == t.shape()


class TestUpdates:
    def test_relabel_involution(self):
        t = path_gadget("ab")
        u = Relabel(1, lab("z"))
        t2 = apply_update(t, u)
        assert apply_update(t2, inverse_update(t, u)) == t

    def test_delete_splices_children(self):
        t = io.tree_from_text("r(a x(p q s) b)")
        x = t.children(t.root)[1]
        out = apply_update(t, Delete(x))
        assert [out.label_name(c) for c in out.children(out.root)] == ["a", "p", "q", "s", "b"]

    def test_root_deletion(self):
        t = path_gadget("ab")
        assert len(apply_update(t, Delete(0))) == 1
        with pytest.raises(TreeError):
            apply_update(right_attach(single("r"), 0, "xy"), Delete(0))

    def test_id_reuse_rejected(self):
        with pytest.raises(TreeError):
            apply_update(path_gadget("ab"), InsertLeaf(0, 0, lab("c"), node=1))

    def test_insert_parent_general_form(self):
        t = io.tree_from_text("r(a b c)")
        out = apply_update(t, InsertParent(t.root, 1, 2, lab("m")))
        assert io.tree_to_text(out) == "r(a m(b c))"

    def test_random_script_reversal(self):
        rng = random.Random(17)
        for _ in range(10):
            t = random_tree(rng, 8)
            cur, inverses = t, []
            for _ in range(50):
                nodes = sorted(cur.nodes())
                r = rng.random()
                if r < 0.35:
                    u = Relabel(rng.choice(nodes), lab(rng.choice("abc")))
                elif r < 0.7 or len(cur) < 3:
                    p = rng.choice(nodes)
                    k = len(cur.children(p))
                    pos = rng.randint(0, k)
                    u = InsertParent(p, pos, rng.randint(0, k - pos), lab(rng.choice("abc")))
                else:
                    u = Delete(rng.choice([v for v in nodes if v != cur.root]))
                inverses.append(inverse_update(cur, u))
                before = len(cur)
                cur = apply_update(cur, u)
                expect = 0 if isinstance(u, Relabel) else (1 if not isinstance(u, Delete) else -1)
                assert len(cur) - before == expect
                cur.validate()
            assert apply_script(cur, reversed(inverses)) == t

    def test_script_json_roundtrip(self, tmp_path):
        script = [("T", Relabel(2, lab("q"))), ("T'", InsertLeaf(0, 1, lab("w"))), ("T", Delete(4))]
        io.dump_script(script, tmp_path / "s.json")
        assert io.load_script(tmp_path / "s.json") == script
