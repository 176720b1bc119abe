"""Scored parsing over function-valued min-plus products, static and online.

A ``FunctionMap`` is a tuple of scores indexed by nonterminal, and ``E`` is
the null function: ``F + E = E + F = F`` and ``E`` is ignored by ``fmin``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .folding import PairedAlphabet, _pair_cost, split_symbols

INF = math.inf


class _Null:
    __slots__ = ()

    def __repr__(self):
        return "E"


E = _Null()


@dataclass
class ScoredGrammar:
    nonterminals: list
    start: str
    binary: list = field(default_factory=list)    # (X, Y, Z, cost)
    terminal: list = field(default_factory=list)  # (X, t, cost)

    def __post_init__(self):
        self.index = {x: i for i, x in enumerate(self.nonterminals)}
        if len(self.index) != len(self.nonterminals):
            raise ValueError("duplicate nonterminal")
        if self.start not in self.index:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        for r in self.binary:
            if len(r) != 4 or any(s not in self.index for s in r[:3]):
                raise ValueError(f"bad binary rule {r!r}")
            if r[3] < 0:
                raise ValueError("rule costs must be nonnegative")
        for r in self.terminal:
            if len(r) != 3 or r[0] not in self.index or r[2] < 0:
                raise ValueError(f"bad terminal rule {r!r}")
            if r[1] in ("", None):
                raise ValueError("epsilon rules are not allowed")
        # rules grouped by (Y, Z) for the plus operation
        by_pair: dict = {}
        for x, y, z, c in self.binary:
            by_pair.setdefault((self.index[y], self.index[z]), []).append((self.index[x], c))
        self._by_pair = list(by_pair.items())
        self._term: dict = {}
        for x, t, c in self.terminal:
            f = self._term.setdefault(t, [INF] * len(self.nonterminals))
            f[self.index[x]] = min(f[self.index[x]], c)
        self._term = {t: tuple(f) for t, f in self._term.items()}
        self.top = tuple([INF] * len(self.nonterminals))

    @property
    def size(self) -> int:
        return len(self.nonterminals)

    def leaf(self, t) -> tuple:
        """A_{i,i+1}: the cheapest terminal rule for ``t`` per nonterminal."""
        return self._term.get(t, self.top)

    def plus(self, f1, f2):
        if f1 is E:
            return f2
        if f2 is E:
            return f1
        out = list(self.top)
        for (y, z), heads in self._by_pair:
            a = f1[y]
            if a == INF:
                continue
            b = f2[z]
            if b == INF:
                continue
            base = a + b
            for x, c in heads:
                if base + c < out[x]:
                    out[x] = base + c
        return tuple(out)

    def fmin(self, fs: Iterable):
        out = None
        for f in fs:
            if f is E:
                continue
            out = f if out is None else tuple(map(min, out, f))
        return E if out is None else out

    def value(self, f, x=None):
        x = self.start if x is None else x
        return INF if f is E else f[self.index[x]]

    # serialization
    @classmethod
    def from_json(cls, data) -> "ScoredGrammar":
        if isinstance(data, str):
            data = json.loads(data)
        binary, terminal = [], []
        for r in data["rules"]:
            if "terminal" in r:
                terminal.append((r["lhs"], r["terminal"], int(r.get("cost", 0))))
            else:
                rhs = r["rhs"]
                if len(rhs) != 2:
                    raise ValueError(f"rule {r!r} is not in Chomsky normal form")
                binary.append((r["lhs"], rhs[0], rhs[1], int(r.get("cost", 0))))
        return cls(list(data["nonterminals"]), data["start"], binary, terminal)

    def to_json(self) -> dict:
        rules = [{"lhs": x, "rhs": [y, z], "cost": c} for x, y, z, c in self.binary]
        rules += [{"lhs": x, "terminal": t, "cost": c} for x, t, c in self.terminal]
        return {"nonterminals": list(self.nonterminals), "start": self.start, "rules": rules}


def plus_matrix(g: ScoredGrammar, A, B):
    """(A (+) B)_{i,j} = min_k A_{i,k} + B_{k,j}."""
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[g.fmin(g.plus(A[i][k], B[k][j]) for k in range(m)) for j in range(p)] for i in range(n)]


def initial_matrix(g: ScoredGrammar, text: Sequence):
    n = len(text)
    A = [[g.top] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        A[i][i] = E
    for i, t in enumerate(text):
        A[i][i + 1] = g.leaf(t)
    return A


def closure_by_recurrence(g: ScoredGrammar, text: Sequence):
    """A+ = min_i A^(i) with A^(i) = min_j A^(j) (+) A^(i-j); quintic, for small inputs."""
    A = initial_matrix(g, text)
    n = len(text) + 1
    powers = [None, A]
    for i in range(2, n + 1):
        powers.append(_elementwise_min(g, [plus_matrix(g, powers[j], powers[i - j]) for j in range(1, i)]))
    out = _elementwise_min(g, powers[1:])
    # E also vanishes under min, so E with all-TOP terms lands on TOP; reset the diagonal
    for i in range(n):
        out[i][i] = E
    return out


def _elementwise_min(g, mats):
    n = len(mats[0])
    return [[g.fmin(m[i][j] for m in mats) for j in range(n)] for i in range(n)]


def closure(g: ScoredGrammar, text: Sequence):
    """A+ by interval length: entry (i, j) is F_{[i..j)}; the diagonal is E, below it all-TOP."""
    n = len(text)
    F = [[g.top] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        F[i][i] = E
    for i, t in enumerate(text):
        F[i][i + 1] = g.leaf(t)
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length
            F[i][j] = g.fmin(g.plus(F[i][k], F[k][j]) for k in range(i + 1, j))
    return F


def static_scored_parse(g: ScoredGrammar, text: Sequence, x=None):
    if not text:
        return INF
    return g.value(closure(g, text)[0][len(text)], x)


class NaiveMinPlusOMv:
    """Reference backend: keeps the matrix and multiplies each vector directly."""

    def __init__(self, g: ScoredGrammar, matrix):
        self.g = g
        self.matrix = matrix

    def product(self, v):
        return [self.g.fmin(self.g.plus(a, b) for a, b in zip(row, v)) for row in self.matrix]

    def backsolve(self, w):
        """u_i = min(w_i, min_{j>i} A_{i,j} + u_j) for an upper triangular A with null diagonal."""
        n = len(w)
        u = [None] * n
        for i in range(n - 1, -1, -1):
            row = self.matrix[i]
            u[i] = self.g.fmin([w[i]] + [self.g.plus(row[j], u[j]) for j in range(i + 1, n)])
        return u


class EngineExpired(RuntimeError):
    pass


class SegmentEngine:
    """Answers suffix queries for the segment ``[p, p+s)`` of the stream.

    ``mode="closure"`` combines the closure with ``M (+) v`` by
    back-substitution; ``mode="literal"`` uses the single product
    ``A+ (+) (M (+) v)``, which is only right when (+) is associative.
    """

    def __init__(self, g: ScoredGrammar, p: int, segment: Sequence, backend=NaiveMinPlusOMv,
                 mode: str = "closure"):
        if not segment:
            raise ValueError("segment must be nonempty")
        if mode not in ("closure", "literal"):
            raise ValueError(mode)
        self.g, self.p, self.s, self.mode = g, p, len(segment), mode
        self.closure = closure(g, segment)
        self.omv = backend(g, self.closure)
        # rows p..p+s, one column per cut p+s, p+s+1, ...
        self.grow = [[self.closure[i][self.s]] for i in range(self.s + 1)]
        self.queries = 0

    def query(self, v):
        """``v[k]`` is F_{[p+s+k .. t]}; returns F_{[i .. t]} for i in [p, p+s)."""
        if self.queries >= self.s:
            raise EngineExpired(f"engine for [{self.p}, {self.p + self.s}) already answered {self.s} queries")
        g = self.g
        if len(v) != len(self.grow[0]):
            raise ValueError("query vector length does not match the stored columns")
        w = [g.fmin(g.plus(a, b) for a, b in zip(row, v)) for row in self.grow]
        u = self.omv.backsolve(w) if self.mode == "closure" else self.omv.product(w)
        for row, x in zip(self.grow, u):
            row.append(x)
        self.queries += 1
        return u[:self.s]

    def state(self) -> str:
        def enc(f):
            return "E" if f is E else [None if x == INF else x for x in f]

        return json.dumps({"p": self.p, "s": self.s, "closure": [[enc(f) for f in r] for r in self.closure],
                           "grow": [[enc(f) for f in r] for r in self.grow],
                           "queries": self.queries}, sort_keys=True)


def binary_partition(t: int) -> list[int]:
    """Interval lengths for a prefix of length ``t``, largest first."""
    return [1 << b for b in range(t.bit_length() - 1, -1, -1) if t >> b & 1]


class OnlineParser:
    """Online scored parsing with one segment engine per binary interval."""

    def __init__(self, g: ScoredGrammar, backend=NaiveMinPlusOMv, mode: str = "closure"):
        self.g, self.backend, self.mode = g, backend, mode
        self.text: list = []
        self.intervals: list[SegmentEngine] = []
        self.history: list[list[tuple[int, int]]] = []

    def push(self, ch):
        g = self.g
        self.text.append(ch)
        t = len(self.text)
        # q[k] = F_{[t-k .. t]} (1-based positions), built right to left
        q = [g.leaf(ch)]
        for eng in reversed(self.intervals):
            ans = eng.query(list(reversed(q)))
            q.extend(reversed(ans))
        self._repartition(t)
        return g.value(q[-1])

    def _repartition(self, t: int):
        lengths = binary_partition(t)
        keep, pos = [], 0
        for eng, L in zip(self.intervals, lengths):
            if eng.s != L or eng.p != pos:
                break
            keep.append(eng)
            pos += L
        for L in lengths[len(keep):]:
            keep.append(SegmentEngine(self.g, pos, self.text[pos:pos + L], self.backend, self.mode))
            pos += L
        self.intervals = keep
        self.history.append([(e.p, e.s) for e in keep])

    def partition(self) -> list[tuple[int, int]]:
        return [(e.p, e.s) for e in self.intervals]


def partition_ok(parts: list[tuple[int, int]], t: int) -> bool:
    pos, last = 0, None
    for p, s in parts:
        if p != pos or s & (s - 1) or (last is not None and s >= last):
            return False
        pos, last = pos + s, s
    return pos == t


def online_parse(g: ScoredGrammar, stream: Iterable, **kw) -> list:
    parser = OnlineParser(g, **kw)
    return [parser.push(ch) for ch in stream]


# presets ----------------------------------------------------------------------

def pair_grammar(terminals: Sequence[str], pair_cost, single_cost: int) -> ScoredGrammar:
    """S -> S S | x (single_cost) | N_x N_y (pair cost) | N_x T_y, T_y -> S N_y.

    A pair (x, y) encloses an optional inner S; ``pair_cost`` returning
    None forbids it.
    """
    nts = ["S"] + [f"N[{x}]" for x in terminals] + [f"T[{y}]" for y in terminals]
    binary = [("S", "S", "S", 0)]
    terminal = []
    for x in terminals:
        terminal.append(("S", x, single_cost))
        terminal.append((f"N[{x}]", x, 0))
        binary.append((f"T[{x}]", "S", f"N[{x}]", 0))
    for x in terminals:
        for y in terminals:
            c = pair_cost(x, y)
            if c is None:
                continue
            binary.append(("S", f"N[{x}]", f"N[{y}]", c))
            binary.append(("S", f"N[{x}]", f"T[{y}]", c))
    return ScoredGrammar(nts, "S", binary, terminal)


def rna_grammar(alphabet: PairedAlphabet) -> ScoredGrammar:
    """Cost = number of unpaired symbols, so score = (t - cost) / 2."""
    comp = lambda x, y: 0 if x.rstrip("'") == y.rstrip("'") and x != y else None
    return pair_grammar(alphabet.symbols(), comp, 1)


def dyck_grammar(alphabet: PairedAlphabet, neutral: Sequence[str] = ()) -> ScoredGrammar:
    """Cost = Dyck edit distance: deletions cost 1, a pair costs its substitutions."""
    neutral = set(neutral)
    opener = lambda s: s not in neutral and not s.endswith("'")
    closer = lambda s: s not in neutral and s.endswith("'")
    syms = alphabet.symbols() + sorted(neutral)
    return pair_grammar(syms, lambda x, y: _pair_cost(x, y, opener, closer), 1)


def _stream(stream):
    return split_symbols(stream) if isinstance(stream, str) else list(stream)


def online_rna(stream, alphabet: PairedAlphabet | None = None, **kw) -> list[int]:
    seq = _stream(stream)
    alphabet = alphabet or PairedAlphabet.infer(seq)
    alphabet.check(seq)
    costs = online_parse(rna_grammar(alphabet), seq, **kw)
    return [(t - c) // 2 for t, c in enumerate(costs, start=1)]


def online_dyck(stream, alphabet: PairedAlphabet | None = None, neutral: Sequence[str] = (), **kw) -> list[int]:
    seq = _stream(stream)
    alphabet = alphabet or PairedAlphabet.infer([s for s in seq if s not in neutral])
    alphabet.check([s for s in seq if s not in neutral])
    return list(online_parse(dyck_grammar(alphabet, neutral), seq, **kw))


def random_grammar(rng, n_nonterminals: int = 4, terminals: Sequence[str] = ("a", "b"),
                   n_binary: int = 8, max_cost: int = 3) -> ScoredGrammar:
    nts = [f"X{i}" for i in range(n_nonterminals)]
    binary = sorted({(rng.choice(nts), rng.choice(nts), rng.choice(nts), rng.randint(0, max_cost))
                     for _ in range(n_binary)})
    terminal = [(x, t, rng.randint(0, max_cost)) for x in nts for t in terminals if rng.random() < 0.6]
    return ScoredGrammar(nts, nts[0], binary, terminal)
