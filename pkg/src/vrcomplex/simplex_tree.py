"""Simplex tree: a trie over increasing vertex sequences.

A simplex ``(v0 < v1 < ... < vk)`` is the path root -> v0 -> ... -> vk, so
depth-``k`` nodes are in bijection with ``k``-simplices. Children are kept
in plain lists ordered by label; every construction in this package inserts
children in increasing order, which makes insertion an append.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Iterator, Sequence

from .errors import NodeBudgetExceeded, StructuralError, ValidationError

__all__ = [
    "Node",
    "SimplexTree",
    "Simplex",
    "as_simplex",
    "insert_child",
    "simplices_at_level",
    "f_vector",
    "contains",
    "as_simplex_set",
    "canonical_dump",
]

Simplex = tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Validate and return ``vertices`` as a simplex tuple.

    Raises :class:`ValidationError` if the sequence is empty or not
    strictly increasing.
    """
    s = tuple(vertices)
    if not s:
        raise ValidationError("a simplex needs at least one vertex")
    for a, b in zip(s, s[1:]):
        if a >= b:
            raise ValidationError(f"simplex vertices must be strictly increasing: {s}")
    return s


class Node:
    __slots__ = ("label", "depth", "parent", "children")

    def __init__(self, label: int, depth: int, parent: "Node | None"):
        self.label = label
        self.depth = depth
        self.parent = parent
        self.children: list[Node] = []

    @property
    def is_root(self) -> bool:
        return self.parent is None

    def simplex(self) -> Simplex:
        """Vertex labels on the path from the root to this node."""
        out = []
        node = self
        while node.parent is not None:
            out.append(node.label)
            node = node.parent
        return tuple(reversed(out))

    def child_labels(self) -> list[int]:
        return [c.label for c in self.children]

    def find_child(self, label: int) -> "Node | None":
        kids = self.children
        lo, hi = 0, len(kids)
        while lo < hi:
            mid = (lo + hi) // 2
            if kids[mid].label < label:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(kids) and kids[lo].label == label:
            return kids[lo]
        return None

    def __repr__(self) -> str:
        if self.parent is None:
            return "Node(<root>)"
        return f"Node({self.simplex()})"


class SimplexTree:
    """Trie of simplices with per-level node counts.

    Parameters
    ----------
    node_budget : int, optional
        Maximum number of nodes. Exceeding it raises
        :class:`NodeBudgetExceeded`.
    """

    def __init__(self, node_budget: int | None = None):
        self.root = Node(-1, -1, None)
        self.level_counts: list[int] = []
        self.size = 0
        self.node_budget = node_budget

    def insert_child(self, parent: Node, label: int) -> Node:
        """Insert ``label`` below ``parent`` and return the new node.

        The label must exceed the parent's label and must not already be a
        child of ``parent``. Either violation raises
        :class:`StructuralError`; they only arise from algorithm bugs.
        """
        if label <= parent.label:
            raise StructuralError(
                f"cannot insert {label} under {parent.simplex()}: labels must increase along a path"
            )
        kids = parent.children
        node = Node(label, parent.depth + 1, parent)
        if not kids or kids[-1].label < label:
            kids.append(node)
        else:
            pos = bisect_left([c.label for c in kids], label)
            if kids[pos].label == label:
                raise StructuralError(
                    f"duplicate insertion of simplex {parent.simplex() + (label,)}"
                )
            kids.insert(pos, node)
        depth = node.depth
        if depth == len(self.level_counts):
            self.level_counts.append(0)
        self.level_counts[depth] += 1
        self.size += 1
        if self.node_budget is not None and self.size > self.node_budget:
            raise NodeBudgetExceeded(self.node_budget)
        return node

    def extend_children(self, parent: Node, labels: Sequence[int]) -> list[Node]:
        """Give a childless ``parent`` the children ``labels`` in one step.

        ``labels`` must be strictly increasing; constructions pass kernel
        output, which is increasing by construction, so only the first
        label is checked against the parent. A parent that already has
        children raises :class:`StructuralError` (duplicate expansion).
        """
        if parent.children:
            raise StructuralError(f"children of {parent.simplex()} were already inserted")
        if labels[0] <= parent.label:
            raise StructuralError(
                f"cannot insert {labels[0]} under {parent.simplex()}: labels must increase along a path"
            )
        depth = parent.depth + 1
        kids = [Node(v, depth, parent) for v in labels]
        parent.children = kids
        if depth == len(self.level_counts):
            self.level_counts.append(0)
        self.level_counts[depth] += len(kids)
        self.size += len(kids)
        if self.node_budget is not None and self.size > self.node_budget:
            raise NodeBudgetExceeded(self.node_budget)
        return kids

    def add_vertex(self, u: int) -> Node:
        return self.insert_child(self.root, u)

    def insert_simplex(self, s: Sequence[int]) -> Node:
        """Insert ``s`` whose maximal proper prefix must already be stored."""
        s = as_simplex(s)
        parent = self.root if len(s) == 1 else self.find(s[:-1])
        if parent is None:
            raise StructuralError(f"prefix {s[:-1]} of {s} is not in the tree")
        return self.insert_child(parent, s[-1])

    def find(self, s: Sequence[int]) -> Node | None:
        node = self.root
        for v in s:
            node = node.find_child(v)
            if node is None:
                return None
        return node

    def contains(self, s: Sequence[int]) -> bool:
        return self.find(as_simplex(s)) is not None

    def graft(self, other: "SimplexTree") -> None:
        """Move every top-level subtree of ``other`` under this tree's root.

        The grafted labels must all exceed this tree's current largest
        top-level label, so repeated grafts in vertex order keep siblings
        sorted. ``other`` is left empty.
        """
        kids = self.root.children
        incoming = other.root.children
        if incoming and kids and incoming[0].label <= kids[-1].label:
            raise StructuralError(
                f"graft out of order: {incoming[0].label} after {kids[-1].label}"
            )
        for node in incoming:
            node.parent = self.root
        kids.extend(incoming)
        for depth, count in enumerate(other.level_counts):
            if depth == len(self.level_counts):
                self.level_counts.append(0)
            self.level_counts[depth] += count
        self.size += other.size
        other.root.children = []
        other.level_counts = []
        other.size = 0
        if self.node_budget is not None and self.size > self.node_budget:
            raise NodeBudgetExceeded(self.node_budget)

    def iter_nodes(self) -> Iterator[Node]:
        """Preorder traversal, children in label order (root excluded)."""
        stack = list(reversed(self.root.children))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def simplices_at_level(self, k: int) -> list[Simplex]:
        if k < 0:
            raise ValidationError(f"level must be nonnegative, got {k}")
        if k >= len(self.level_counts):
            return []
        out = []
        # Preorder with sorted children visits each level in lexicographic order.
        path: list[int] = []

        def walk(node: Node) -> None:
            path.append(node.label)
            if node.depth == k:
                out.append(tuple(path))
            else:
                for child in node.children:
                    walk(child)
            path.pop()

        for top in self.root.children:
            walk(top)
        return out

    def f_vector(self) -> tuple[int, ...]:
        counts = list(self.level_counts)
        while counts and counts[-1] == 0:
            counts.pop()
        return tuple(counts)

    @property
    def dimension(self) -> int:
        return len(self.f_vector()) - 1

    def as_simplex_set(self) -> list[Simplex]:
        """All simplices ordered by dimension, then lexicographically."""
        out: list[Simplex] = []
        for k in range(len(self.level_counts)):
            out.extend(self.simplices_at_level(k))
        return out

    def dump(self) -> str:
        """Canonical text: one simplex per line in :meth:`as_simplex_set` order."""
        return "".join(" ".join(map(str, s)) + "\n" for s in self.as_simplex_set())

    def __len__(self) -> int:
        return self.size

    def __contains__(self, s: object) -> bool:
        try:
            return self.contains(s)  # type: ignore[arg-type]
        except (TypeError, ValidationError):
            return False

    def __repr__(self) -> str:
        return f"SimplexTree(f_vector={self.f_vector()})"


def insert_child(tree: SimplexTree, parent: Node, label: int) -> Node:
    return tree.insert_child(parent, label)


def simplices_at_level(tree: SimplexTree, k: int) -> list[Simplex]:
    return tree.simplices_at_level(k)


def f_vector(tree: SimplexTree) -> tuple[int, ...]:
    return tree.f_vector()


def contains(tree: SimplexTree, s: Sequence[int]) -> bool:
    return tree.contains(s)


def as_simplex_set(tree: SimplexTree) -> list[Simplex]:
    return tree.as_simplex_set()


def canonical_dump(tree: SimplexTree) -> str:
    return tree.dump()
