"""Fibonacci numbers kept in an infinite, self-referential memo tree.

Nodes of a complete binary tree are numbered so that node ``n`` has children
``2n`` and ``2n + 1``; the binary digits of ``n`` after the leading 1 spell
the path from the root (0 = left, 1 = right).  In the memo tree node ``n``
holds ``fib(n)``, and the value of each node is computed by looking up the
two nodes before it in the same tree.
"""

from __future__ import annotations

from typing import Callable, Union

from .lazy_core import LazyCell, defer, ready, stats
from .streams import Cons, Stream, cons, smap

__all__ = [
    "BinTree",
    "FibHandle",
    "breadth_first",
    "descend",
    "fast_fib",
    "fib_handle",
    "fib_lookup",
    "fib_oneshot",
    "fib_stream",
    "node_path",
    "slow_fib",
]


def _check_domain(n: int) -> None:
    if n < 1:
        raise ValueError(f"fib is defined for n >= 1, got {n}")


def slow_fib(n: int) -> int:
    """Doubly recursive reference; exponential time."""
    _check_domain(n)
    if n <= 2:
        return 1
    return slow_fib(n - 2) + slow_fib(n - 1)


def fast_fib(n: int) -> int:
    _check_domain(n)
    a, b = 0, 1
    while n > 1:
        a, b, n = b, a + b, n - 1
    return b


Lazy = Union[LazyCell, Callable[[], object]]


def _cell(x: Lazy) -> LazyCell:
    return x if isinstance(x, LazyCell) else defer(x)


class BinTree:
    """``fork element left right`` with every component lazy."""

    __slots__ = ("_element", "_left", "_right")

    def __init__(self, element: Lazy, left: Lazy, right: Lazy):
        self._element = _cell(element)
        self._left = _cell(left)
        self._right = _cell(right)
        stats.nodes += 1

    @property
    def element(self) -> int:
        return self._element.force()

    @property
    def left(self) -> BinTree:
        return self._left.force()

    @property
    def right(self) -> BinTree:
        return self._right.force()

    def __repr__(self) -> str:
        return f"BinTree({self._element!r})"


def node_path(n: int) -> list[int]:
    """Directions from the root to node ``n``: 0 for left, 1 for right."""
    if n < 1:
        raise ValueError(f"node numbers start at 1, got {n}")
    return [int(bit) for bit in bin(n)[3:]]


def descend(t: BinTree, n: int) -> BinTree:
    """Node ``n`` of ``t``; counts one visit per node touched, root included."""
    stats.visits += 1
    for bit in node_path(n):
        t = t.right if bit else t.left
        stats.visits += 1
    return t


def breadth_first(t: BinTree) -> Stream:
    """Subtrees of ``t`` in node-number order, as a queue that feeds on itself.

    The queue starts with ``t``; each subtree taken from the front appends
    its two children to the back.
    """

    def traverse(q: Stream) -> Stream:
        def step():
            node = q.force()
            fork = node.head
            return Cons(fork.left, cons(fork.right, lambda: traverse(node.tail)))

        return Stream(step)

    q = cons(t, lambda: traverse(q))
    return q


class FibHandle:
    """One memo tree plus its breadth-first views.

    Every lookup through a handle reads the same tree, so values computed by
    one call are still there for the next.
    """

    def __init__(self):
        self.tree = BinTree(
            ready(1),
            ready(BinTree(ready(1), lambda: self._build(4), lambda: self._build(5))),
            lambda: self._build(3),
        )
        self.nodes = breadth_first(self.tree)
        self.stream = smap(lambda t: t.element, self.nodes)

    def _build(self, n: int) -> BinTree:
        return BinTree(
            lambda: self.lookup(n - 2) + self.lookup(n - 1),
            lambda: self._build(2 * n),
            lambda: self._build(2 * n + 1),
        )

    def lookup(self, n: int) -> int:
        _check_domain(n)
        return descend(self.tree, n).element

    def __repr__(self) -> str:
        return f"<FibHandle tree={self.tree!r}>"


def fib_handle() -> FibHandle:
    return FibHandle()


def fib_lookup(h: FibHandle, n: int) -> int:
    return h.lookup(n)


def fib_stream(h: FibHandle) -> Stream:
    """``fib(1), fib(2), ...`` read off the handle's tree in breadth-first order."""
    return h.stream


def fib_oneshot(n: int) -> int:
    """``fib(n)`` with a memo tree that lives only for this call."""
    return FibHandle().lookup(n)
