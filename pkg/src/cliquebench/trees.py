"""Bracketed constituency trees: parsing, serialization, pruning, traversal.

Trees are immutable; every operation returns new nodes. Word tokens read
from unbracketed positions become ordinary leaf nodes flagged with
``is_word`` so traversals can optionally skip them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "LabelSequence",
    "ConstituencyTree",
    "PrunedTree",
    "TreeParseError",
    "parse_tree",
    "serialize_tree",
    "prune",
    "level_order",
    "iter_nodes",
    "strip_decorations",
]

#: Level-order traversal output: one label per surviving node.
LabelSequence = tuple[str, ...]


class TreeParseError(ValueError):
    """Malformed bracketed text; ``offset`` is the character position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class ConstituencyTree:
    """A labeled ordered tree; leaves have no children."""

    label: str
    children: tuple["ConstituencyTree", ...] = ()
    is_word: bool = False

    def __post_init__(self):
        if not self.label:
            raise ValueError("tree nodes need a non-empty label")
        if any(ch in "() \t\r\n" for ch in self.label):
            raise ValueError(
                f"label may not contain brackets or whitespace: {self.label!r}"
            )
        if self.is_word and self.children:
            raise ValueError("word leaves cannot have children")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def node_count(self) -> int:
        return sum(1 for _ in iter_nodes(self))

    def tree_height(self) -> int:
        if not self.children:
            return 1
        return 1 + max(child.tree_height() for child in self.children)

    def __str__(self) -> str:
        return serialize_tree(self)


@dataclass(frozen=True)
class PrunedTree:
    """A tree truncated so no node sits deeper than ``height`` (root depth 1)."""

    root: ConstituencyTree
    height: int

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("pruning height must be >= 1")


def iter_nodes(tree: ConstituencyTree) -> Iterator[ConstituencyTree]:
    """Pre-order iteration over every node."""
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


_BREAK_CHARS = "-="


def strip_decorations(label: str) -> str:
    """Drop function tags and indices: ``NP-SBJ`` -> ``NP``, ``PP=2`` -> ``PP``.

    Labels starting with ``-`` (``-NONE-``, ``-LRB-``) are returned unchanged.
    """
    if label.startswith("-"):
        return label
    for i, ch in enumerate(label):
        if i and ch in _BREAK_CHARS:
            return label[:i]
    return label


def parse_tree(text: str, *, strip_tags: bool = True) -> ConstituencyTree:
    """Parse a single tree written as ``(LABEL child child ...)``.

    Children are nested brackets or bare word tokens; word tokens become
    leaves with ``is_word=True``. With ``strip_tags`` (the default),
    decorations after ``-`` or ``=`` are dropped from bracketed labels;
    word tokens are never altered.

    Raises :class:`TreeParseError` on empty input, empty labels,
    unbalanced brackets, or trailing content.
    """
    n = len(text)

    def skip_ws(pos: int) -> int:
        while pos < n and text[pos].isspace():
            pos += 1
        return pos

    def read_atom(pos: int) -> tuple[str, int]:
        start = pos
        while pos < n and not text[pos].isspace() and text[pos] not in "()":
            pos += 1
        return text[start:pos], pos

    def read_node(pos: int) -> tuple[ConstituencyTree, int]:
        # pos points at '('
        pos = skip_ws(pos + 1)
        label, pos = read_atom(pos)
        if not label:
            raise TreeParseError("node label is empty", pos)
        if strip_tags:
            label = strip_decorations(label)
        children = []
        while True:
            pos = skip_ws(pos)
            if pos >= n:
                raise TreeParseError("unbalanced brackets: unexpected end of input", pos)
            ch = text[pos]
            if ch == ")":
                return ConstituencyTree(label, tuple(children)), pos + 1
            if ch == "(":
                child, pos = read_node(pos)
                children.append(child)
            else:
                word, pos = read_atom(pos)
                children.append(ConstituencyTree(word, (), is_word=True))

    pos = skip_ws(0)
    if pos >= n:
        raise TreeParseError("empty input", pos)
    if text[pos] != "(":
        raise TreeParseError("expected '('", pos)
    tree, pos = read_node(pos)
    pos = skip_ws(pos)
    if pos < n:
        raise TreeParseError("trailing content after tree", pos)
    return tree


def serialize_tree(tree: ConstituencyTree) -> str:
    """Canonical bracketed form: single spaces, word leaves as bare tokens,
    childless non-word nodes as ``(LABEL)``.

    ``parse_tree(serialize_tree(t))`` reproduces ``t`` exactly for any tree
    whose root is not a word leaf.
    """

    def render(node: ConstituencyTree, at_root: bool) -> str:
        if node.children:
            inner = " ".join(render(c, False) for c in node.children)
            return f"({node.label} {inner})"
        if node.is_word and not at_root:
            return node.label
        return f"({node.label})"

    return render(tree, True)


def prune(tree: ConstituencyTree, height: int) -> PrunedTree:
    """Copy of ``tree`` with every node deeper than ``height`` removed.

    The root has depth 1; nodes at depth exactly ``height`` become leaves.
    Pruning with ``height >= tree.tree_height()`` returns the tree unchanged.
    """
    if height < 1:
        raise ValueError("pruning height must be >= 1")

    def cut(node: ConstituencyTree, depth: int) -> ConstituencyTree:
        if depth == height:
            return ConstituencyTree(node.label, (), node.is_word)
        kids = tuple(cut(c, depth + 1) for c in node.children)
        return ConstituencyTree(node.label, kids, node.is_word)

    return PrunedTree(cut(tree, 1), height)


def level_order(tree: ConstituencyTree, *, include_words: bool = True) -> LabelSequence:
    """Breadth-first label sequence, siblings left to right.

    With ``include_words=False`` leaves flagged as word tokens are skipped.
    """
    out: list[str] = []
    queue = deque([tree])
    while queue:
        node = queue.popleft()
        if node.is_word and not include_words:
            continue
        out.append(node.label)
        queue.extend(node.children)
    return tuple(out)
