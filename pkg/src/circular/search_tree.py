"""Circular search trees for constraint-satisfaction enumeration.

A search tree is ``None`` (empty) or a :class:`Node` carrying a value, a lazy
subtree and a lazy chain of siblings.  Reading values along a path from the
root spells a candidate sequence.

All the trees here are built by one schema: the top level is the chain
``1..n`` and the subtree of top-level node ``m`` is a filtered copy of the
whole tree.  Filtering a node's *shadow* (the path with its first element
dropped, which sits one level up) is enough, because every constraint not
involving the first element has already been applied to the shadow.  Each
problem only supplies the test made against the first element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from .lazy_core import LazyCell, defer, stats
from .streams import Stream, from_iterable

__all__ = [
    "Node",
    "ShadowSeq",
    "complete_tree",
    "count_solutions",
    "expand",
    "iter_paths",
    "iter_prefixes",
    "perm_tree",
    "queens_tree",
    "repeated",
    "solutions",
    "squarefree_tree",
]

Tree = Optional["Node"]
Lazy = Union[LazyCell, Callable[[], Tree]]

# Returned by an admit function to drop a candidate.
PRUNE = object()


class Node:
    """``node value subtree siblings``.

    ``tests`` records how many primitive tests were spent admitting this
    node; it lets the single-test claims be checked node by node.
    """

    __slots__ = ("value", "_subtree", "_siblings", "tests")

    def __init__(self, value: int, subtree: Lazy, siblings: Lazy, tests: int = 0):
        self.value = value
        self._subtree = subtree if type(subtree) is LazyCell else LazyCell(subtree)
        self._siblings = siblings if type(siblings) is LazyCell else LazyCell(siblings)
        self.tests = tests
        stats.nodes += 1

    @property
    def subtree(self) -> Tree:
        return self._subtree.force()

    @property
    def siblings(self) -> Tree:
        return self._siblings.force()

    def evaluated_children(self) -> tuple[bool, bool]:
        """Whether the subtree and sibling cells have been forced yet."""
        return self._subtree.is_evaluated, self._siblings.is_evaluated

    def __repr__(self) -> str:
        return f"Node({self.value})"


def _check_alphabet(n: int) -> None:
    if n < 1:
        raise ValueError(f"alphabet size must be >= 1, got {n}")


def _schema(n: int, subtree_of: Callable[[int, LazyCell], Lazy]) -> Tree:
    """``T = toplevel 1`` where ``toplevel m = node m (subtree_of m T) (toplevel (m+1))``."""
    _check_alphabet(n)

    def toplevel(m: int) -> Tree:
        if m > n:
            return None
        return Node(m, subtree_of(m, top), lambda: toplevel(m + 1))

    top = defer(lambda: toplevel(1))
    return top.force()


def complete_tree(n: int) -> Tree:
    """The complete infinite tree over ``1..n``.

    Every subtree is the tree itself, so only ``n`` nodes ever exist.
    """
    return _schema(n, lambda m, top: top)


def expand(t: Tree) -> Tree:
    """A structurally equal copy of ``t`` sharing nothing, built on demand."""
    if t is None:
        return None
    return Node(t.value, LazyCell(_expand_cell, t._subtree), LazyCell(_expand_cell, t._siblings))


def _expand_cell(cell: LazyCell) -> Tree:
    return expand(cell.force())


AdmitFn = Callable[[object, int], object]


def _filter(state, shadow: Tree, admit: AdmitFn) -> Tree:
    """Copy of the shadow's sibling chain keeping the values ``admit`` accepts.

    ``admit(state, value)`` returns :data:`PRUNE` or the state to filter the
    kept node's own shadow subtree with.  A pruned candidate's subtree is
    never looked at.
    """
    while shadow is not None:
        before = stats.tests
        nxt = admit(state, shadow.value)
        if nxt is PRUNE:
            stats.pruned += 1
            shadow = shadow.siblings
            continue
        return _kept(shadow, state, nxt, admit, stats.tests - before)
    return None


def _kept(shadow: Node, state, nxt, admit: AdmitFn, tests: int) -> Node:
    return Node(
        shadow.value,
        lambda: _filter(nxt, shadow.subtree, admit),
        lambda: _filter(state, shadow.siblings, admit),
        tests,
    )


def _admit_perm(banned: int, a: int):
    stats.tests += 1
    return PRUNE if a == banned else banned


def perm_tree(n: int) -> Tree:
    """Depth-k paths are the k-permutations of ``1..n``.

    Below a path, the one value to exclude besides those the shadow already
    excludes is the path's first element, so each candidate costs one test.
    """
    return _schema(n, lambda m, top: lambda: _filter(m, top.force(), _admit_perm))


def _admit_queen(state: tuple[int, int], a: int):
    col, banned = state
    stats.tests += 3
    if banned in (a, a + col, a - col):
        return PRUNE
    return (col + 1, banned)


def queens_tree(n: int) -> Tree:
    """Depth-n paths are the n-queens boards (position = column, value = row).

    A candidate ``col`` columns after the first queen is checked against that
    queen's row and two diagonals only.
    """
    return _schema(n, lambda m, top: lambda: _filter((1, m), top.force(), _admit_queen))


@dataclass(frozen=True)
class ShadowSeq:
    """A path stored most-recent-first."""

    symbols: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.symbols)

    def push(self, a: int) -> ShadowSeq:
        return ShadowSeq((a,) + self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


def repeated(h: int, s: ShadowSeq) -> bool:
    """True when the latest ``h`` symbols equal the ``h`` before them."""
    symbols = s.symbols
    if h < 1:
        raise ValueError(f"half-length must be >= 1, got {h}")
    if len(symbols) < 2 * h:
        raise ValueError(f"sequence of length {len(symbols)} is shorter than 2*{h}")
    for i in range(h):
        stats.comparisons += 1
        if symbols[i] != symbols[i + h]:
            return False
    return True


def _admit_squarefree(state: tuple[int, ShadowSeq], a: int):
    length, seq = state
    seq2 = seq.push(a)
    if length % 2 == 0:
        stats.tests += 1
        if repeated(length // 2, seq2):
            return PRUNE
    return (length + 1, seq2)


def squarefree_tree(n: int) -> Tree:
    """Depth-k paths are the square-free sequences of length k over ``1..n``.

    A candidate completing an even length ``2h`` is tested once, for its two
    halves being equal; shorter repeats ending at it are ruled out by the
    shadow, as are all repeats when the length is odd.
    """
    return _schema(
        n,
        lambda m, top: lambda: _filter((2, ShadowSeq((m,))), top.force(), _admit_squarefree),
    )


def iter_prefixes(t: Tree, depth: int) -> Iterator[tuple[int, Node]]:
    """``(level, node)`` for every node reachable within ``depth`` levels, depth first.

    Levels count from 1.  Nothing below ``depth`` is forced.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if depth == 0:
        return
    stack: list[Tree] = [t]
    while stack:
        node = stack[-1]
        if node is None:
            stack.pop()
            if stack:
                stack[-1] = stack[-1]._siblings.force()
            continue
        yield len(stack), node
        if len(stack) < depth:
            stack.append(node._subtree.force())
        else:
            stack[-1] = node._siblings.force()


def iter_paths(t: Tree, k: int) -> Iterator[tuple[int, ...]]:
    """Root paths of length exactly ``k``, left to right.

    The generator forces only what is needed for the paths it has produced.
    """
    if k < 0:
        raise ValueError(f"path length must be >= 0, got {k}")
    if k == 0:
        yield ()
        return
    stack: list[Tree] = [t]
    while stack:
        node = stack[-1]
        if node is None:
            stack.pop()
            if stack:
                stack[-1] = stack[-1]._siblings.force()
            continue
        if len(stack) == k:
            yield tuple(x.value for x in stack)
            stack[-1] = node._siblings.force()
        else:
            stack.append(node._subtree.force())


def solutions(t: Tree, k: int) -> Stream:
    """Lazy stream of the length-``k`` root paths, in lexicographic order."""
    return from_iterable(iter_paths(t, k))


def count_solutions(t: Tree, k: int) -> int:
    return sum(1 for _ in iter_paths(t, k))
