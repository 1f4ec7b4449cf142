"""Circular programs: self-referential lazy data structures.

Submodules:

* :mod:`circular.lazy_core` -- evaluate-once cells and counters
* :mod:`circular.streams` -- infinite streams, Hamming numbers, products
* :mod:`circular.memo_fib` -- Fibonacci memo tree and breadth-first queue
* :mod:`circular.search_tree` -- shadow-pruned search trees
"""

from .lazy_core import BlackHole, LazyCell, Stats, defer, force, measure, reset_stats, snapshot_stats
from .streams import DuplicateDetected, EmptyStream, Stream

__version__ = "0.1.0"

__all__ = [
    "BlackHole",
    "DuplicateDetected",
    "EmptyStream",
    "LazyCell",
    "Stats",
    "Stream",
    "defer",
    "force",
    "measure",
    "reset_stats",
    "snapshot_stats",
]
