"""JSON and text serialisation for graphs, trees and update scripts."""

from __future__ import annotations

import json
import re
from pathlib import Path

from .graph import Graph
from .labels import REGISTRY
from .tree import Delete, InsertLeaf, InsertParent, Relabel, Tree, TreeBuilder


# -- graphs -----------------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    d = {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}
    if g.weights is not None:
        d["weights"] = {f"{u}-{v}": g.weights[(u, v)] for u, v in sorted(g.edges)}
    return d


def graph_from_dict(d: dict) -> Graph:
    weights = None
    if d.get("weights") is not None:
        weights = {}
        for key, w in d["weights"].items():
            u, v = (int(x) for x in key.split("-"))
            weights[(u, v)] = int(w)
    return Graph.from_edges(int(d["n"]), [tuple(e) for e in d["edges"]], weights)


def dump_graph(g: Graph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(g), sort_keys=True) + "\n")


def load_graph(path) -> Graph:
    return graph_from_dict(json.loads(Path(path).read_text()))


# -- trees ------------------------------------------------------------------

def tree_to_nested(t: Tree, v: int | None = None) -> dict:
    v = t.root if v is None else v
    out = {"label": t.label_name(v), "children": []}
    stack = [(v, out)]
    while stack:
        u, node = stack.pop()
        for c in t.children(u):
            child = {"label": t.label_name(c), "children": []}
            node["children"].append(child)
            stack.append((c, child))
    return out


def tree_from_nested(d: dict) -> Tree:
    b = TreeBuilder()
    stack = [(d, None)]
    while stack:
        node, parent = stack.pop()
        v = b.add(node["label"], parent)
        for c in reversed(node.get("children", [])):
            stack.append((c, v))
    return b.freeze()


_BARE = re.compile(r"^[^\s()\"]+$")


def _quote(name: str) -> str:
    return name if _BARE.match(name) else json.dumps(name)


def tree_to_text(t: Tree) -> str:
    """Compact one-line form, e.g. ``a(b c(d))``."""
    out = []
    stack = [("node", t.root)]
    while stack:
        kind, v = stack.pop()
        if kind == "close":
            out.append(")")
            continue
        if kind == "space":
            out.append(" ")
            continue
        out.append(_quote(t.label_name(v)))
        kids = t.children(v)
        if kids:
            out.append("(")
            stack.append(("close", None))
            for i, c in enumerate(reversed(kids)):
                stack.append(("node", c))
                if i < len(kids) - 1:
                    stack.append(("space", None))
    return "".join(out)


_TOKEN = re.compile(r'\s*(?:(\()|(\))|("(?:[^"\\]|\\.)*")|([^\s()"]+))')


def tree_from_text(s: str) -> Tree:
    b = TreeBuilder()
    stack: list[int] = []
    last = None
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse tree text at offset {pos}")
        pos = m.end()
        if m.group(1):
            if last is None:
                raise ValueError("'(' without a preceding label")
            stack.append(last)
        elif m.group(2):
            if not stack:
                raise ValueError("unbalanced ')'")
            stack.pop()
        else:
            name = json.loads(m.group(3)) if m.group(3) else m.group(4)
            parent = stack[-1] if stack else None
            if parent is None and b.root is not None:
                raise ValueError("text describes more than one root")
            last = b.add(name, parent)
    if stack:
        raise ValueError("unbalanced '('")
    return b.freeze()


def dump_tree(t: Tree, path) -> None:
    Path(path).write_text(json.dumps(tree_to_nested(t)) + "\n")


def load_tree(path) -> Tree:
    return tree_from_nested(json.loads(Path(path).read_text()))


# -- update scripts ---------------------------------------------------------

def update_to_dict(u, side: str | None = None) -> dict:
    if isinstance(u, Relabel):
        d = {"op": "relabel", "node": u.node, "label": REGISTRY.name(u.label)}
    elif isinstance(u, InsertLeaf):
        d = {"op": "insert_leaf", "parent": u.parent, "position": u.position,
             "label": REGISTRY.name(u.label), "node": u.node}
    elif isinstance(u, InsertParent):
        d = {"op": "insert", "parent": u.parent, "position": u.position, "count": u.count,
             "label": REGISTRY.name(u.label), "node": u.node}
    elif isinstance(u, Delete):
        d = {"op": "delete", "node": u.node}
    else:
        raise TypeError(u)
    if side is not None:
        d["side"] = side
    return d


def update_from_dict(d: dict):
    op = d["op"]
    if op == "relabel":
        return Relabel(int(d["node"]), REGISTRY.intern(d["label"]))
    if op == "insert_leaf":
        return InsertLeaf(int(d["parent"]), int(d["position"]), REGISTRY.intern(d["label"]), d.get("node"))
    if op == "insert":
        return InsertParent(int(d["parent"]), int(d["position"]), int(d["count"]),
                            REGISTRY.intern(d["label"]), d.get("node"))
    if op == "delete":
        return Delete(int(d["node"]))
    raise ValueError(f"unknown update op {op!r}")


def dump_script(script, path) -> None:
    """``script`` holds updates or ``(side, update)`` pairs."""
    rows = []
    for item in script:
        if isinstance(item, tuple):
            rows.append(update_to_dict(item[1], item[0]))
        else:
            rows.append(update_to_dict(item))
    Path(path).write_text(json.dumps(rows) + "\n")


def load_script(path) -> list:
    out = []
    for d in json.loads(Path(path).read_text()):
        u = update_from_dict(d)
        out.append((d["side"], u) if "side" in d else u)
    return out
