"""Ordered node-labelled trees with stable node identifiers.

A :class:`Tree` is never mutated after construction.  Builders and updates
return new trees; node ids of untouched nodes are preserved, which is what
lets update scripts refer to nodes across many rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .labels import REGISTRY


class TreeError(ValueError):
    pass


class Tree:
    __slots__ = ("root", "_label", "_children", "_parent", "_cache")

    def __init__(self, root: int, labels: dict, children: dict, *, check: bool = True):
        self.root = root
        self._label = labels
        self._children = {v: tuple(children.get(v, ())) for v in labels}
        parent = {root: None}
        for v, kids in self._children.items():
            for c in kids:
                if check and c in parent:
                    raise TreeError(f"node {c} has two parents or is the root")
                parent[c] = v
        self._parent = parent
        self._cache = {}
        if check:
            self.validate()

    def validate(self) -> None:
        if self.root not in self._label:
            raise TreeError("root has no label")
        if set(self._parent) != set(self._label):
            raise TreeError("children links reference unknown nodes or nodes are detached")
        seen = self.preorder()
        if len(seen) != len(self._label) or set(seen) != set(self._label):
            raise TreeError("tree is not connected or contains a cycle")

    # -- accessors -------------------------------------------------------
    def __len__(self) -> int:
        return len(self._label)

    def __contains__(self, v) -> bool:
        return v in self._label

    def nodes(self):
        return self._label.keys()

    def label(self, v: int) -> int:
        return self._label[v]

    def label_name(self, v: int) -> str:
        return REGISTRY.name(self._label[v])

    def children(self, v: int) -> tuple:
        return self._children[v]

    def parent(self, v: int):
        return self._parent[v]

    def next_id(self) -> int:
        return max(self._label) + 1

    def preorder(self) -> list[int]:
        if "pre" not in self._cache:
            out, stack = [], [self.root]
            while stack:
                v = stack.pop()
                out.append(v)
                stack.extend(reversed(self._children.get(v, ())))
            self._cache["pre"] = out
        return self._cache["pre"]

    def postorder(self) -> list[int]:
        if "post" not in self._cache:
            out, stack = [], [(self.root, False)]
            while stack:
                v, done = stack.pop()
                if done:
                    out.append(v)
                    continue
                stack.append((v, True))
                for c in reversed(self._children[v]):
                    stack.append((c, False))
            self._cache["post"] = out
        return self._cache["post"]

    def _ranks(self):
        if "ranks" not in self._cache:
            pre = {v: i for i, v in enumerate(self.preorder())}
            post = {v: i for i, v in enumerate(self.postorder())}
            self._cache["ranks"] = (pre, post)
        return self._cache["ranks"]

    def pre_rank(self, v: int) -> int:
        return self._ranks()[0][v]

    def is_ancestor(self, u: int, v: int) -> bool:
        """Strict ancestry: ``u`` is a proper ancestor of ``v``."""
        pre, post = self._ranks()
        return pre[u] < pre[v] and post[u] > post[v]

    def labels_in(self, order: Sequence[int]) -> list[int]:
        return [self._label[v] for v in order]

    def postorder_arrays(self):
        """``(order, labels, leftmost, keyroots)`` in 0-based postorder.

        ``leftmost[i]`` is the postorder index of the leftmost leaf below
        node ``i``; keyroots are listed in increasing postorder.
        """
        if "parr" not in self._cache:
            order = self.postorder()
            idx = {v: i for i, v in enumerate(order)}
            leftmost = [0] * len(order)
            for i, v in enumerate(order):
                kids = self._children[v]
                leftmost[i] = leftmost[idx[kids[0]]] if kids else i
            last = {}
            for i in range(len(order)):
                last[leftmost[i]] = i
            keyroots = sorted(last.values())
            labels = [self._label[v] for v in order]
            self._cache["parr"] = (order, labels, leftmost, keyroots)
        return self._cache["parr"]

    # -- comparison ------------------------------------------------------
    def shape(self, v: int | None = None) -> tuple:
        """Id-free encoding: ``(label, child count)`` for each node in preorder.

        Flat so that comparing deep spines never recurses.
        """
        v = self.root if v is None else v
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            kids = self._children[u]
            out.append((self._label[u], len(kids)))
            stack.extend(reversed(kids))
        return tuple(out)

    def same_labels(self, other: "Tree") -> bool:
        return self.shape() == other.shape()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return (
            self.root == other.root
            and self._label == other._label
            and self._children == other._children
        )

    def __hash__(self):
        return hash((self.root, len(self)))

    def __repr__(self) -> str:
        return f"Tree(n={len(self)}, root={self.root})"

    # -- internal copy helpers -------------------------------------------
    def _replace(self, labels=None, children=None, root=None) -> "Tree":
        t = Tree.__new__(Tree)
        t.root = self.root if root is None else root
        t._label = self._label if labels is None else labels
        t._children = self._children if children is None else children
        if children is None and root is None:
            t._parent = self._parent
        else:
            parent = {t.root: None}
            for v, kids in t._children.items():
                for c in kids:
                    parent[c] = v
            t._parent = parent
        t._cache = {}
        if children is None and root is None:
            # structure unchanged: orders and index arrays stay valid
            for key in ("pre", "post", "ranks"):
                if key in self._cache:
                    t._cache[key] = self._cache[key]
        return t

    def relabeled(self, changes: dict) -> "Tree":
        for v in changes:
            if v not in self._label:
                raise TreeError(f"unknown node {v}")
        labels = dict(self._label)
        labels.update(changes)
        return self._replace(labels=labels)


# -- builders ---------------------------------------------------------------

def _as_ids(labels) -> list[int]:
    return [REGISTRY.intern(x) if isinstance(x, str) else int(x) for x in labels]


def single(label) -> Tree:
    return Tree(0, {0: _as_ids([label])[0]}, {0: ()})


def path_gadget(labels: Sequence) -> Tree:
    """Path of ``len(labels)`` nodes labelled top to bottom."""
    ids = _as_ids(labels)
    if not ids:
        raise TreeError("path gadget needs a non-empty label sequence")
    lab = dict(enumerate(ids))
    kids = {i: (i + 1,) for i in range(len(ids) - 1)}
    kids[len(ids) - 1] = ()
    return Tree(0, lab, kids, check=False)


def path_nodes(t: Tree) -> list[int]:
    """Nodes on the first-child path from the root down."""
    out, v = [t.root], t.root
    while t.children(v):
        v = t.children(v)[0]
        out.append(v)
    return out


def _attach(t: Tree, v: int, labels, left: bool) -> tuple[Tree, list[int]]:
    if v not in t:
        raise TreeError(f"unknown node {v}")
    ids = _as_ids(labels)
    start = t.next_id()
    new = list(range(start, start + len(ids)))
    lab = dict(t._label)
    kids = dict(t._children)
    for u, x in zip(new, ids):
        lab[u] = x
        kids[u] = ()
    kids[v] = tuple(new) + kids[v] if left else kids[v] + tuple(new)
    return t._replace(labels=lab, children=kids), new


def right_attach(t: Tree, v: int, labels) -> Tree:
    """Append ``len(labels)`` leaves to ``v`` after its existing children."""
    return _attach(t, v, labels, left=False)[0]


def left_attach(t: Tree, v: int, labels) -> Tree:
    """Prepend ``len(labels)`` leaves to ``v`` before its existing children."""
    return _attach(t, v, labels, left=True)[0]


def right_attach_ids(t: Tree, v: int, labels) -> tuple[Tree, list[int]]:
    return _attach(t, v, labels, left=False)


def left_attach_ids(t: Tree, v: int, labels) -> tuple[Tree, list[int]]:
    return _attach(t, v, labels, left=True)


class TreeBuilder:
    """Mutable scratch structure for instance builders; ``freeze()`` yields a Tree."""

    def __init__(self):
        self.labels: dict[int, int] = {}
        self.children: dict[int, list[int]] = {}
        self.root: int | None = None
        self._next = 0

    def add(self, label, parent: int | None = None, *, first: bool = False) -> int:
        v = self._next
        self._next += 1
        self.labels[v] = _as_ids([label])[0]
        self.children[v] = []
        if parent is None:
            if self.root is not None:
                raise TreeError("builder already has a root")
            self.root = v
        elif first:
            self.children[parent].insert(0, v)
        else:
            self.children[parent].append(v)
        return v

    def add_path(self, labels, parent: int | None = None) -> list[int]:
        out = []
        for x in labels:
            parent = self.add(x, parent)
            out.append(parent)
        return out

    def add_leaves(self, parent: int, labels, *, first: bool = False) -> list[int]:
        """Attach leaves in left-to-right order; ``first`` places the block
        before the existing children."""
        new = [self.add(x, parent) for x in labels]
        if first:
            kids = self.children[parent]
            del kids[len(kids) - len(new):]
            kids[0:0] = new
        return new

    def freeze(self) -> Tree:
        return Tree(self.root, dict(self.labels), {v: tuple(c) for v, c in self.children.items()})


# -- updates ----------------------------------------------------------------

@dataclass(frozen=True)
class Relabel:
    node: int
    label: int


@dataclass(frozen=True)
class InsertLeaf:
    parent: int
    position: int
    label: int
    node: int | None = None


@dataclass(frozen=True)
class InsertParent:
    """Insert a node as the new parent of ``count`` consecutive children of
    ``parent`` starting at ``position`` (``count == 0`` is a leaf insert)."""

    parent: int
    position: int
    count: int
    label: int
    node: int | None = None


@dataclass(frozen=True)
class Delete:
    node: int


Update = Union[Relabel, InsertLeaf, InsertParent, Delete]


def apply_update(t: Tree, u: Update) -> Tree:
    if isinstance(u, Relabel):
        if u.node not in t:
            raise TreeError(f"relabel of unknown node {u.node}")
        return t.relabeled({u.node: u.label})
    if isinstance(u, InsertLeaf):
        return apply_update(t, InsertParent(u.parent, u.position, 0, u.label, u.node))
    if isinstance(u, InsertParent):
        if u.parent not in t:
            raise TreeError(f"insert under unknown node {u.parent}")
        kids = t.children(u.parent)
        if not (0 <= u.position and u.count >= 0 and u.position + u.count <= len(kids)):
            raise TreeError("insert position out of range")
        v = t.next_id() if u.node is None else u.node
        if v in t:
            raise TreeError(f"node id {v} already in use")
        lab = dict(t._label)
        lab[v] = u.label
        ch = dict(t._children)
        ch[v] = kids[u.position:u.position + u.count]
        ch[u.parent] = kids[:u.position] + (v,) + kids[u.position + u.count:]
        return t._replace(labels=lab, children=ch)
    if isinstance(u, Delete):
        v = u.node
        if v not in t:
            raise TreeError(f"delete of unknown node {v}")
        lab = dict(t._label)
        del lab[v]
        ch = dict(t._children)
        kids = ch.pop(v)
        p = t.parent(v)
        if p is None:
            if len(kids) != 1:
                raise TreeError("deleting the root must leave exactly one child")
            return t._replace(labels=lab, children=ch, root=kids[0])
        sib = ch[p]
        i = sib.index(v)
        ch[p] = sib[:i] + kids + sib[i + 1:]
        return t._replace(labels=lab, children=ch)
    raise TypeError(f"not an update: {u!r}")


def apply_script(t: Tree, script: Iterable[Update]) -> Tree:
    for u in script:
        t = apply_update(t, u)
    return t


def inverse_update(t: Tree, u: Update) -> Update:
    """The update undoing ``u`` when applied to ``apply_update(t, u)``."""
    if isinstance(u, Relabel):
        return Relabel(u.node, t.label(u.node))
    if isinstance(u, (InsertLeaf, InsertParent)):
        v = t.next_id() if u.node is None else u.node
        return Delete(v)
    if isinstance(u, Delete):
        p = t.parent(u.node)
        if p is None:
            raise TreeError("root deletion is not invertible by a non-root insert")
        pos = t.children(p).index(u.node)
        return InsertParent(p, pos, len(t.children(u.node)), t.label(u.node), u.node)
    raise TypeError(f"not an update: {u!r}")
