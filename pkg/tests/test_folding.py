import itertools
import random

import pytest
from hypothesis import given, strategies as st

from dynbounds.folding import (
    PairedAlphabet,
    brute_force_folding,
    brute_force_foldings,
    dyck_ed,
    dyck_embed,
    dyck_of_embedding,
    expand_weighted,
    is_balanced,
    random_string,
    rna_score,
    rna_score_weighted,
    split_symbols,
)

AB = PairedAlphabet.of("a", "b")
sym_lists = st.lists(st.sampled_from(["a", "a'", "b", "b'"]), max_size=10)


def brute_dyck(seq, alphabet):
    # Shortest edit to a balanced string by BFS over edit scripts; tiny inputs only.
    syms = alphabet.symbols()
    start = tuple(seq)
    seen, frontier, d = {start}, [start], 0
    while True:
        if any(is_balanced(list(s)) for s in frontier):
            return d
        nxt = []
        for s in frontier:
            cand = [s[:i] + s[i + 1:] for i in range(len(s))]
            cand += [s[:i] + (c,) + s[i + 1:] for i in range(len(s)) for c in syms]
            cand += [s[:i] + (c,) + s[i:] for i in range(len(s) + 1) for c in syms]
            for c in cand:
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier, d = nxt, d + 1


class TestTokens:
    def test_split(self):
        assert split_symbols("aa'b") == ["a", "a'", "b"]
        assert split_symbols("a a′ b") == ["a", "a'", "b"]

    def test_unknown(self):
        with pytest.raises(ValueError):
            rna_score("a c", AB)

    def test_alphabet(self):
        assert AB.partner("a") == "a'" and AB.partner("b'") == "b"
        with pytest.raises(ValueError):
            PairedAlphabet.of("a", "a")


class TestRna:
    def test_single_pair(self):
        assert rna_score("a a'") == 1

    def test_crossing(self):
        assert rna_score("a b a' b'") == 1

    def test_nested(self):
        assert rna_score("a a b b' a' a'") == 3

    def test_repeat(self):
        assert rna_score("a a' a a'") == 2 == brute_force_folding("a a' a a'")

    def test_empty(self):
        assert rna_score("") == 0 == brute_force_folding("")

    def test_either_order(self):
        assert rna_score("a' a") == 1

    @given(sym_lists)
    def test_brute_force(self, seq):
        assert rna_score(seq, AB) == brute_force_folding(seq)

    def test_enumeration_agrees(self, rng):
        for _ in range(40):
            s = random_string(rng, rng.randint(0, 9), AB)
            folds = brute_force_foldings(s)
            for f in folds:
                assert all(not (i < p < j < q) for (i, j) in f for (p, q) in f)
            assert max(len(f) for f in folds) == rna_score(s, AB)

    def test_guard(self):
        with pytest.raises(ValueError):
            brute_force_folding(["a"] * 15)


class TestWeighted:
    def test_unit_expansion(self):
        assert expand_weighted("a b'", {}) == ["a", "b'"]

    def test_double(self):
        s = expand_weighted("a a'", {"a": 2})
        assert s == ["a", "a", "a'", "a'"]
        assert rna_score(s) == 2 == rna_score_weighted("a a'", None, {"a": 2})

    def test_lemma(self, rng):
        for _ in range(200):
            s = random_string(rng, rng.randint(0, 8), AB)
            w = {"a": rng.randint(1, 4), "b": rng.randint(1, 4)}
            v = rna_score_weighted(s, AB, w)
            assert v == rna_score(expand_weighted(s, w), AB) == brute_force_folding(s, w)

    def test_bad_weight(self):
        with pytest.raises(ValueError):
            rna_score_weighted("a a'", None, {"a": 0})


class TestDyck:
    def test_balanced(self):
        assert dyck_ed("a a'") == 0

    def test_lone_closer(self):
        assert dyck_ed("a'") == 1

    def test_reversed(self):
        assert dyck_ed("a' a") == 2

    def test_substitution(self):
        assert dyck_ed("a b'") == 1

    def test_brute_force(self, rng):
        for _ in range(60):
            s = random_string(rng, rng.randint(0, 5), AB)
            assert dyck_ed(s, AB) == brute_dyck(s, AB)

    @given(sym_lists)
    def test_zero_iff_balanced(self, seq):
        assert (dyck_ed(seq, AB) == 0) == is_balanced(seq)


class TestEmbedding:
    def test_lengths(self):
        assert len(dyck_embed("a")) == 6 and len(dyck_embed("a'")) == 6
        assert dyck_embed("a'") == ["1a", "#", "0a'", "1a", "#", "0a'"]

    def test_pair(self):
        assert dyck_of_embedding("a a'") == 3 * 2 - 2 * 1 == 4

    def test_no_pairs(self):
        assert dyck_of_embedding("a a a b") == 12

    def test_identity_all_short(self):
        one = PairedAlphabet.of("a")
        for L in range(0, 6):
            for s in itertools.product(["a", "a'"], repeat=L):
                assert dyck_of_embedding(list(s), one) == 3 * L - 2 * rna_score(list(s), one)

    def test_identity_random(self):
        rng = random.Random(12)
        for nb in (1, 2, 3):
            alpha = PairedAlphabet(tuple("abc"[:nb]))
            for _ in range(40):
                s = random_string(rng, rng.randint(0, 8), alpha)
                for closer in ("mirror", "padded"):
                    assert dyck_of_embedding(s, alpha, closer) == 3 * len(s) - 2 * rna_score(s, alpha)

    def test_displayed_image_fails(self):
        # The printed four-symbol closer image undercounts a lone closer.
        assert dyck_of_embedding("a'", None, "displayed") == 2
        assert 3 * 1 - 2 * rna_score("a'") == 3
