"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each row times one kernel on a fixed seeded input under both backends and
checks that the two agree.
"""

import argparse
import json
import random
import sys
import timeit

from dynbounds import backend
from dynbounds.exact import negative_table, random_tree, string_ed, ted
from dynbounds.folding import PairedAlphabet, random_string
from dynbounds.gadgets import build_cng, build_clg, random_graph
from dynbounds.kernels import interval_min
from dynbounds.model import TOP
from dynbounds.unweighted import UNIT, build_unweighted_instance


def cases():
    rng = random.Random(7)
    g = random_graph(6, 0.6, rng)
    a, b = build_clg(g, (1, 2)), build_cng(g, (3, 4))
    yield "string_ed clique gadgets", lambda pure: string_ed(a, b, pure=pure), f"{len(a)}x{len(b)}"

    t1, t2 = random_tree(rng, 300), random_tree(rng, 300)
    yield "ted random 300 nodes", lambda pure: ted(t1, t2, pure=pure), "300x300"

    delta = negative_table(rng)
    u1, u2 = random_tree(rng, 200), random_tree(rng, 200)
    yield "ted negative table 200 nodes", lambda pure: ted(u1, u2, delta, pure=pure), "200x200"

    inst = build_unweighted_instance(random_graph(2, 1.0, rng), 1, (1,))
    yield "ted unweighted instance n=2", lambda pure: ted(inst.T, inst.T2, UNIT, pure=pure), \
        "{}x{}".format(*inst.sizes())

    s = random_string(rng, 200, PairedAlphabet.of("a", "b"))
    n = len(s)
    pc = [[(0 if s[i][0] == s[k][0] and s[i] != s[k] else TOP) if k > i else TOP for k in range(n)]
          for i in range(n)]
    yield "interval_min length 200", lambda pure: interval_min([1] * n, pc, pure=pure)[0][n], "200"


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    if backend() != "cython":
        print("compiled extension not available; only the fallback can be timed", file=sys.stderr)
    rows = []
    for name, fn, size in cases():
        fast = fn(False)
        slow = fn(True)
        t_fast = min(timeit.repeat(lambda: fn(False), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: fn(True), number=1, repeat=args.repeat))
        rows.append({"kernel": name, "size": size, "compiled_s": round(t_fast, 5), "python_s": round(t_slow, 5),
                     "speedup": round(t_slow / t_fast, 1) if t_fast else None, "agree": fast == slow})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"backend: {backend()}")
        print(f"{'kernel':32} {'size':>10} {'compiled s':>11} {'python s':>10} {'speedup':>8} agree")
        for r in rows:
            print(f"{r['kernel']:32} {r['size']:>10} {r['compiled_s']:>11.4f} {r['python_s']:>10.4f} "
                  f"{r['speedup']:>7}x {r['agree']}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
