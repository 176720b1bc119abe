"""RNA folding, Dyck edit distance and the two string lemmas linking them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .kernels import interval_min
from .model import TOP

PRIMES = ("'", "′")
MAX_LEN = 4096
BRUTE_LIMIT = 14


def split_symbols(text: str) -> list[str]:
    """Tokenize ``"a b' c"`` or ``"ab'c"``; a trailing prime belongs to the symbol before it."""
    if any(ch.isspace() for ch in text.strip()):
        return [tok.replace("′", "'") for tok in text.split()]
    out = []
    for ch in text:
        if ch in PRIMES and out:
            out[-1] += "'"
        else:
            out.append(ch)
    return out


@dataclass(frozen=True)
class PairedAlphabet:
    """Base symbols and their primed partners ``s'``."""

    base: tuple

    def __post_init__(self):
        if len(set(self.base)) != len(self.base) or any(s.endswith("'") for s in self.base):
            raise ValueError("base symbols must be distinct and unprimed")

    @classmethod
    def of(cls, *symbols) -> "PairedAlphabet":
        return cls(tuple(symbols))

    @classmethod
    def infer(cls, seq: Sequence[str]) -> "PairedAlphabet":
        return cls(tuple(sorted({s.rstrip("'") for s in seq})))

    def symbols(self) -> list[str]:
        return [s for b in self.base for s in (b, b + "'")]

    def partner(self, s: str) -> str:
        self.check([s])
        return s[:-1] if s.endswith("'") else s + "'"

    def is_open(self, s: str) -> bool:
        return not s.endswith("'")

    def kind(self, s: str) -> str:
        return s.rstrip("'")

    def check(self, seq: Sequence[str]) -> None:
        ok = set(self.base)
        for s in seq:
            if s.rstrip("'") not in ok or s.count("'") > 1:
                raise ValueError(f"unknown symbol {s!r}")


def _prep(S, alphabet):
    seq = split_symbols(S) if isinstance(S, str) else list(S)
    alphabet = alphabet or PairedAlphabet.infer(seq)
    alphabet.check(seq)
    if len(seq) > MAX_LEN:
        raise ValueError(f"string longer than {MAX_LEN}")
    return seq, alphabet


def _fold_table(seq, gain):
    n = len(seq)
    pc = [[TOP] * n for _ in range(n)]
    for i in range(n):
        for k in range(i + 1, n):
            if seq[i].rstrip("'") == seq[k].rstrip("'") and seq[i] != seq[k]:
                pc[i][k] = -gain(seq[i])
    return interval_min([0] * n, pc)


def rna_score(S, alphabet: PairedAlphabet | None = None) -> int:
    """Largest number of non-crossing complementary pairs."""
    seq, _ = _prep(S, alphabet)
    return -_fold_table(seq, lambda s: 1)[0][len(seq)]


def rna_score_weighted(S, alphabet: PairedAlphabet | None, w: Mapping[str, int]) -> int:
    """Largest total ``w`` of the first symbol of each pair; ``w`` is given on base symbols."""
    seq, alphabet = _prep(S, alphabet)
    for b in alphabet.base:
        if w.get(b, 1) < 1:
            raise ValueError("weights must be >= 1")
    return -_fold_table(seq, lambda s: w.get(s.rstrip("'"), 1))[0][len(seq)]


def expand_weighted(S, w: Mapping[str, int]) -> list[str]:
    seq = split_symbols(S) if isinstance(S, str) else list(S)
    out = []
    for s in seq:
        k = w.get(s.rstrip("'"), 1)
        if k < 1:
            raise ValueError("weights must be >= 1")
        out += [s] * k
    return out


def brute_force_folding(S, w: Mapping[str, int] | None = None) -> int:
    """Exhaustive maximum over non-crossing complementary pairings."""
    seq = tuple(split_symbols(S) if isinstance(S, str) else S)
    if len(seq) > BRUTE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_LIMIT} symbols")
    w = w or {}

    @lru_cache(maxsize=None)
    def best(i, j):
        if j - i < 2:
            return 0
        # either s_i stays single, or it pairs with some s_k and splits the rest
        v = best(i + 1, j)
        for k in range(i + 1, j):
            if seq[i].rstrip("'") == seq[k].rstrip("'") and seq[i] != seq[k]:
                v = max(v, w.get(seq[i].rstrip("'"), 1) + best(i + 1, k) + best(k + 1, j))
        return v

    return best(0, len(seq))


def brute_force_foldings(S) -> list[frozenset]:
    """Every folding of a short string; exponential, for tests only."""
    seq = split_symbols(S) if isinstance(S, str) else list(S)
    if len(seq) > 10:
        raise ValueError("enumeration limited to 10 symbols")

    def rec(i, j):
        if j - i < 2:
            return [frozenset()]
        out = list(rec(i + 1, j))
        for k in range(i + 1, j):
            if seq[i].rstrip("'") == seq[k].rstrip("'") and seq[i] != seq[k]:
                for a in rec(i + 1, k):
                    for b in rec(k + 1, j):
                        out.append(a | b | {(i, k)})
        return out

    return rec(0, len(seq))


# Dyck edit distance ---------------------------------------------------------

def _pair_cost(x, y, opener, closer) -> int:
    """Substitutions needed to turn ``x ... y`` into a matched opener/closer pair."""
    if opener(x) and closer(y) and x.rstrip("'") == y.rstrip("'"):
        return 0
    if opener(x) or closer(y):
        return 1
    return 2


def dyck_ed(S, alphabet: PairedAlphabet | None = None, *, neutral: Sequence[str] = ()) -> int:
    """Fewest insertions, deletions and substitutions reaching a balanced string.

    ``neutral`` symbols (such as ``#``) belong to the alphabet but are
    neither openers nor closers: they cannot survive unchanged.
    """
    neutral = set(neutral)
    seq = split_symbols(S) if isinstance(S, str) else list(S)
    if alphabet is None:
        alphabet = PairedAlphabet.infer([s for s in seq if s not in neutral])
    alphabet.check([s for s in seq if s not in neutral])
    n = len(seq)
    opener = lambda s: s not in neutral and not s.endswith("'")
    closer = lambda s: s not in neutral and s.endswith("'")
    pc = [[TOP] * n for _ in range(n)]
    for i in range(n):
        for k in range(i + 1, n):
            pc[i][k] = _pair_cost(seq[i], seq[k], opener, closer)
    return interval_min([1] * n, pc)[0][n]


def is_balanced(S, *, neutral: Sequence[str] = ()) -> bool:
    """Stack acceptor for the Dyck language."""
    seq = split_symbols(S) if isinstance(S, str) else list(S)
    stack = []
    for s in seq:
        if s in neutral:
            return False
        if not s.endswith("'"):
            stack.append(s)
        elif not stack or stack.pop() != s[:-1]:
            return False
    return not stack


HASH = "#"


CLOSER_IMAGES = {
    # 1s # 0s' 1s # 0s' mirrors the opener image; the identity holds for it.
    "mirror": lambda z, o: [o, HASH, z + "'", o, HASH, z + "'"],
    # the other length-6 image that satisfies the identity
    "padded": lambda z, o: [o, o, HASH, HASH, z + "'", z + "'"],
    # 1s 1s 0s' 0s' as printed; too short, the identity fails already on "a'"
    "displayed": lambda z, o: [o, o, z + "'", z + "'"],
}


def dyck_embed(S, alphabet: PairedAlphabet | None = None, closer: str = "mirror") -> list[str]:
    """The image Phi(S) over {#} and four fresh brackets per base symbol.

    An opener ``s`` maps to ``0s # 1s' 0s # 1s'``; a closer to the six-symbol
    image chosen by ``closer`` (see ``CLOSER_IMAGES``).  ``#`` is neutral
    for ``dyck_ed``.
    """
    seq, _ = _prep(S, alphabet)
    image = CLOSER_IMAGES[closer]
    out = []
    for s in seq:
        b = s.rstrip("'")
        z, o = f"0{b}", f"1{b}"
        if s.endswith("'"):
            out += image(z, o)
        else:
            out += [z, HASH, o + "'", z, HASH, o + "'"]
    return out


def dyck_of_embedding(S, alphabet: PairedAlphabet | None = None, closer: str = "mirror") -> int:
    seq, alphabet = _prep(S, alphabet)
    return dyck_ed(dyck_embed(seq, alphabet, closer), embed_alphabet(alphabet), neutral=[HASH])


def embed_alphabet(alphabet: PairedAlphabet) -> PairedAlphabet:
    return PairedAlphabet(tuple(f"{d}{b}" for b in alphabet.base for d in "01"))


def random_string(rng: random.Random, length: int, alphabet: PairedAlphabet) -> list[str]:
    syms = alphabet.symbols()
    return [rng.choice(syms) for _ in range(length)]
