"""Derivation trees: the engine's unit of output and deduplication."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Union

from .categories import Category
from .rules import CombinatorKind, valid_instance


@dataclass(frozen=True)
class Leaf:
    word: str | None
    cat: Category
    pos: int


@dataclass(frozen=True)
class Unary:
    kind: CombinatorKind
    cat: Category
    child: "DerivationTree"


@dataclass(frozen=True)
class Binary:
    kind: CombinatorKind
    cat: Category
    left: "DerivationTree"
    right: "DerivationTree"


@dataclass(frozen=True)
class Ternary:
    kind: CombinatorKind
    cat: Category
    left: "DerivationTree"
    mid: "DerivationTree"
    right: "DerivationTree"


DerivationTree = Union[Leaf, Unary, Binary, Ternary]


def children(t: DerivationTree) -> tuple[DerivationTree, ...]:
    if isinstance(t, Leaf):
        return ()
    if isinstance(t, Unary):
        return (t.child,)
    if isinstance(t, Binary):
        return (t.left, t.right)
    return (t.left, t.mid, t.right)


def leaves(t: DerivationTree) -> tuple[Leaf, ...]:
    if isinstance(t, Leaf):
        return (t,)
    out: list[Leaf] = []
    for c in children(t):
        out.extend(leaves(c))
    return tuple(out)


def leftmost_pos(t: DerivationTree) -> int:
    return leaves(t)[0].pos


def node_count(t: DerivationTree) -> int:
    return 1 + sum(node_count(c) for c in children(t))


def tree_height(t: DerivationTree) -> int:
    """Internal-node height: 0 for a leaf, 1 + max child height otherwise.

    Equals the length of the tree's canonical concurrent plan.
    """
    if isinstance(t, Leaf):
        return 0
    return 1 + max(tree_height(c) for c in children(t))


def attach_words(t: DerivationTree, words: Mapping[int, str]) -> DerivationTree:
    """Return an equal-shaped tree whose leaves carry the given words."""
    if isinstance(t, Leaf):
        word = words.get(t.pos, t.word)
        return replace(t, word=word)
    kids = tuple(attach_words(c, words) for c in children(t))
    if isinstance(t, Unary):
        return replace(t, child=kids[0])
    if isinstance(t, Binary):
        return replace(t, left=kids[0], right=kids[1])
    return replace(t, left=kids[0], mid=kids[1], right=kids[2])


def check_tree(t: DerivationTree) -> bool:
    """True iff every internal node's category re-derives from its children
    and leaf positions read off strictly left to right."""
    positions = [lf.pos for lf in leaves(t)]
    if positions != sorted(positions) or len(set(positions)) != len(positions):
        return False
    return _check_nodes(t)


def _check_nodes(t: DerivationTree) -> bool:
    if isinstance(t, Leaf):
        return True
    kids = children(t)
    if not valid_instance(t.kind, tuple(c.cat for c in kids), t.cat):
        return False
    return all(_check_nodes(c) for c in kids)
