"""Lazy, possibly infinite streams and the classic circular list programs.

A :class:`Stream` is a :class:`~circular.lazy_core.LazyCell` whose value is
either ``None`` (the empty stream) or a :class:`Cons` holding a head and a
tail stream.  Streams are compared only through bounded prefixes
(:func:`take`).
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence, TypeVar, Union

from .lazy_core import LazyCell, stats

__all__ = [
    "Cons",
    "DuplicateDetected",
    "EmptyStream",
    "Stream",
    "cons",
    "fib_list",
    "from_iterable",
    "hamming",
    "hamming_staged",
    "head",
    "index",
    "is_empty",
    "merge3",
    "merge_dedup",
    "merge_nodup",
    "nil",
    "ones",
    "posints",
    "powers",
    "primes",
    "products",
    "products_inf",
    "smap",
    "tail",
    "take",
]

T = TypeVar("T")
U = TypeVar("U")


class EmptyStream(LookupError):
    """head/tail/index reached the end of a stream."""


class DuplicateDetected(ValueError):
    """merge_nodup met equal heads, so its inputs were not disjoint."""


class Cons:
    __slots__ = ("head", "tail")

    def __init__(self, head, tail: Stream):
        self.head = head
        self.tail = tail
        stats.nodes += 1

    def __repr__(self) -> str:
        return f"Cons({self.head!r}, ...)"


class Stream(LazyCell):
    """A lazy cell holding ``Cons`` or ``None``."""

    __slots__ = ()

    @property
    def head(self):
        return head(self)

    @property
    def tail(self) -> Stream:
        return tail(self)

    def is_empty(self) -> bool:
        return self.force() is None

    def __iter__(self) -> Iterator:
        s = self
        while (node := s.force()) is not None:
            yield node.head
            s = node.tail


LazyStream = Union[Stream, Callable[[], Stream]]


def _delay(t: LazyStream) -> Stream:
    if isinstance(t, Stream):
        return t
    return Stream(lambda: t().force())


_NIL = Stream.of(None)


def nil() -> Stream:
    return _NIL


def cons(h, t: LazyStream) -> Stream:
    """``h . t``.  ``t`` is a stream or a thunk producing one; it is not forced."""
    return Stream.of(Cons(h, _delay(t)))


def head(s: Stream):
    node = s.force()
    if node is None:
        raise EmptyStream("head of empty stream")
    return node.head


def tail(s: Stream) -> Stream:
    node = s.force()
    if node is None:
        raise EmptyStream("tail of empty stream")
    return node.tail


def is_empty(s: Stream) -> bool:
    return s.force() is None


def take(n: int, s: Stream) -> list:
    """First ``n`` elements.  Forces exactly ``n`` spine cells (none for n=0)."""
    if n < 0:
        raise ValueError(f"take: negative count {n}")
    out = []
    while len(out) < n:
        node = s.force()
        if node is None:
            raise EmptyStream(f"stream ended after {len(out)} of {n} elements")
        out.append(node.head)
        s = node.tail
    return out


def index(n: int, s: Stream):
    """The ``n``-th element, counting from 1."""
    if n < 1:
        raise ValueError(f"index: positions start at 1, got {n}")
    return take(n, s)[-1]


def from_iterable(items: Iterable) -> Stream:
    """Stream over an iterator, advancing it one element per forced cell."""
    it = iter(items)

    def step():
        for x in it:
            return Cons(x, from_iterable(it))
        return None

    return Stream(step)


def smap(f: Callable[[T], U], s: Stream) -> Stream:
    def step():
        node = s.force()
        if node is None:
            return None
        return Cons(f(node.head), smap(f, node.tail))

    return Stream(step)


def merge_dedup(a: Stream, b: Stream) -> Stream:
    """Union of two strictly increasing streams, common elements emitted once."""

    def step():
        x, y = a.force(), b.force()
        if x is None:
            return y
        if y is None:
            return x
        if x.head < y.head:
            return Cons(x.head, merge_dedup(x.tail, b))
        if y.head < x.head:
            return Cons(y.head, merge_dedup(a, y.tail))
        return Cons(x.head, merge_dedup(x.tail, y.tail))

    return Stream(step)


def merge3(a: Stream, b: Stream, c: Stream) -> Stream:
    return merge_dedup(a, merge_dedup(b, c))


def merge_nodup(a: Stream, b: Stream) -> Stream:
    """Merge of two strictly increasing, disjoint streams.

    Raises :class:`DuplicateDetected` when the heads compare equal, which
    doubles as a check that the inputs really were disjoint.
    """

    def step():
        x, y = a.force(), b.force()
        if x is None:
            return y
        if y is None:
            return x
        if x.head < y.head:
            return Cons(x.head, merge_nodup(x.tail, b))
        if y.head < x.head:
            return Cons(y.head, merge_nodup(a, y.tail))
        raise DuplicateDetected(f"both inputs contain {x.head}")

    return Stream(step)


def ones() -> Stream:
    """``1, 1, 1, ...`` as a single cell whose tail is itself."""
    s = Stream(lambda: Cons(1, s))
    return s


def posints() -> Stream:
    s = cons(1, lambda: smap(lambda x: x + 1, s))
    return s


def powers(f: int) -> Stream:
    """``1, f, f**2, ...`` built the same way as :func:`posints`."""
    s = cons(1, lambda: smap(lambda x: x * f, s))
    return s


def hamming() -> Stream:
    """All ``2**i * 3**j * 5**k`` in increasing order, reading itself three times."""
    h = cons(
        1,
        lambda: merge3(
            smap(lambda x: x * 2, h),
            smap(lambda x: x * 3, h),
            smap(lambda x: x * 5, h),
        ),
    )
    return h


def hamming_staged() -> Stream:
    """Hamming numbers with factors combined in ascending order.

    Powers of 2, then times powers of 3, then times powers of 5; no product
    is generated twice, so the merges are all :func:`merge_nodup`.
    """
    a = powers(2)
    b = cons(1, lambda: merge_nodup(a.tail, smap(lambda x: x * 3, b)))
    h = cons(1, lambda: merge_nodup(b.tail, smap(lambda x: x * 5, h)))
    return h


def products(factors: Sequence[int]) -> Stream:
    """All products of powers of ``factors`` (ascending and pairwise coprime).

    ``products([])`` is the one-element stream ``[1]``.
    """
    if not factors:
        return cons(1, nil())
    f, rest = factors[0], factors[1:]
    m = cons(1, lambda: merge_nodup(smap(lambda x: x * f, m), products(rest).tail))
    return m


def products_inf(factors: Stream) -> Stream:
    """All finite products of powers of an infinite stream of factors.

    The least factor is placed second before any merge happens, so each level
    can produce output without looking at the heads of all deeper levels.
    A finite factor stream is accepted too; its last level is ``[1]``.
    """

    def after_one():
        node = factors.force()
        if node is None:
            return nil()
        f, rest = node.head, node.tail
        return cons(
            f,
            lambda: merge_nodup(smap(lambda x: x * f, m.tail), products_inf(rest).tail),
        )

    m = cons(1, after_one)
    return m


def primes() -> Stream:
    """2, 3, 5, ... by trial division against the stream's own prefix."""

    def is_prime(k: int) -> bool:
        for p in ps:
            if p * p > k:
                return True
            if k % p == 0:
                return False
        raise AssertionError("unreachable: primes stream is infinite")

    def candidates(k: int) -> Stream:
        def step():
            j = k
            while not is_prime(j):
                j += 2
            return Cons(j, candidates(j + 2))

        return Stream(step)

    ps = cons(2, lambda: cons(3, candidates(5)))
    return ps


def fib_list() -> Stream:
    """``1, 1, 2, 3, 5, ...``; the producer reads its own output two places back."""

    def f(s: Stream) -> Stream:
        def step():
            node = s.force()
            t = node.tail
            return Cons(node.head + head(t), f(t))

        return Stream(step)

    fl = cons(1, lambda: cons(1, lambda: f(fl)))
    return fl
