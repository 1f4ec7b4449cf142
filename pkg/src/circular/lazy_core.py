"""Evaluate-once suspensions.

A :class:`LazyCell` wraps a zero-argument computation which runs the first
time the cell is forced; the result (or the exception) is remembered and
handed back on every later force.  That is all that is needed to write
self-referential definitions in Python, provided the computation refers to
the cell through a name that is bound by the time it is forced::

    ones = Stream(lambda: Cons(1, ones))

A cell that demands its own value while it is being computed is a *black
hole*; forcing it raises :class:`BlackHole` instead of recursing forever.

All cells report to one library-wide :class:`Stats` record.  Bracket a piece
of work with :func:`reset_stats` / :func:`snapshot_stats` (or use
:func:`measure`) to see what it cost.
"""

from __future__ import annotations

import sys
import threading
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace
from typing import Callable, Generic, Iterator, TypeVar

__all__ = [
    "BlackHole",
    "LazyCell",
    "Stats",
    "deep_call",
    "defer",
    "force",
    "measure",
    "ready",
    "reset_stats",
    "snapshot_stats",
    "stats",
]

T = TypeVar("T")


@dataclass
class Stats:
    """Instrumentation counters.

    ``forces`` counts computations actually executed, ``allocations`` cells
    created, ``nodes`` tree/stream nodes constructed and ``tests`` constraint
    tests.  ``visits``, ``comparisons`` and ``pruned`` are finer-grained
    counters used by the memo tree and the search trees.
    """

    forces: int = 0
    allocations: int = 0
    nodes: int = 0
    tests: int = 0
    visits: int = 0
    comparisons: int = 0
    pruned: int = 0

    def __sub__(self, other: Stats) -> Stats:
        return Stats(**{f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)})

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


# Library-global, single execution context (see module docstring).
stats = Stats()


def snapshot_stats() -> Stats:
    """Return a copy of the current counters."""
    return replace(stats)


def reset_stats() -> None:
    for f in fields(stats):
        setattr(stats, f.name, 0)


@contextmanager
def measure() -> Iterator[Stats]:
    """Yield a :class:`Stats` that is filled with the delta of the block.

    >>> with measure() as cost:
    ...     _ = force(defer(lambda: 1))
    >>> cost.forces
    1
    """
    delta = Stats()
    before = snapshot_stats()
    try:
        yield delta
    finally:
        diff = snapshot_stats() - before
        for f in fields(diff):
            setattr(delta, f.name, getattr(diff, f.name))


class BlackHole(RuntimeError):
    """A cell was forced while its own computation was still running."""


_DEFERRED, _EVALUATING, _VALUE, _POISONED = range(4)
_STATE_NAMES = ("deferred", "evaluating", "value", "poisoned")
_NO_ARG = object()


class LazyCell(Generic[T]):
    """A suspension with call-by-need semantics.

    States move only ``deferred -> evaluating -> value | poisoned``.
    An optional ``arg`` is passed to ``computation`` when it runs, which
    saves building a closure per cell in the hot paths.
    """

    __slots__ = ("_state", "_payload", "_arg")

    def __init__(self, computation: Callable[..., T], arg: object = _NO_ARG):
        self._state = _DEFERRED
        self._payload: object = computation
        self._arg = arg
        stats.allocations += 1

    @classmethod
    def of(cls, value: T) -> LazyCell[T]:
        """An already-evaluated cell.  Counts as an allocation, never as a force."""
        cell = cls.__new__(cls)
        cell._state = _VALUE
        cell._payload = value
        cell._arg = _NO_ARG
        stats.allocations += 1
        return cell

    def force(self) -> T:
        state = self._state
        if state == _VALUE:
            return self._payload  # type: ignore[return-value]
        if state == _POISONED:
            raise self._payload  # type: ignore[misc]
        if state == _EVALUATING:
            raise BlackHole(f"cell #{self.id} depends on its own value")
        computation, arg = self._payload, self._arg
        self._state = _EVALUATING
        self._payload = None
        stats.forces += 1
        try:
            value = computation() if arg is _NO_ARG else computation(arg)  # type: ignore[operator]
        except BaseException as exc:
            if not isinstance(exc, Exception):
                # KeyboardInterrupt and friends: leave the cell retryable.
                self._state, self._payload = _DEFERRED, computation
                raise
            self._state, self._payload, self._arg = _POISONED, exc, _NO_ARG
            raise
        self._state, self._payload, self._arg = _VALUE, value, _NO_ARG
        return value

    @property
    def id(self) -> int:
        """Opaque identifier, only for messages."""
        return id(self)

    @property
    def state(self) -> str:
        return _STATE_NAMES[self._state]

    @property
    def is_evaluated(self) -> bool:
        return self._state == _VALUE

    def peek(self, default=None):
        """The value if already computed, else ``default``.  Never forces."""
        return self._payload if self._state == _VALUE else default

    def __repr__(self) -> str:
        if self._state == _VALUE:
            return f"<{type(self).__name__} #{self.id} = {self._payload!r}>"
        return f"<{type(self).__name__} #{self.id} {self.state}>"


def defer(computation: Callable[..., T], arg: object = _NO_ARG) -> LazyCell[T]:
    return LazyCell(computation, arg)


def ready(value: T) -> LazyCell[T]:
    return LazyCell.of(value)


def force(cell: LazyCell[T]) -> T:
    return cell.force()


def deep_call(fn: Callable[..., T], *args, stack_mb: int = 512, recursion_limit: int = 200_000) -> T:
    """Run ``fn(*args)`` on a thread with a large stack and recursion limit.

    Forcing a deeply nested chain of cells recurses once per link, exactly as
    a lazy interpreter would; this is how to give such chains room.
    """
    result: list = []
    error: list = []

    def target():
        try:
            result.append(fn(*args))
        except BaseException as exc:  # re-raised in the caller's thread
            error.append(exc)

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    threading.stack_size(stack_mb * 1024 * 1024)
    sys.setrecursionlimit(max(old_limit, recursion_limit))
    try:
        worker = threading.Thread(target=target, name="circular-deep-call")
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if error:
        raise error[0]
    return result[0]
