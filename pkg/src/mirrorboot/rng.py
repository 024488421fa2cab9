"""Keyed random streams.

A stream is addressed by ``(seed, index)`` where ``index`` is an integer or a
tuple of integers.  Streams are built from :class:`numpy.random.SeedSequence`
spawn keys and drive a counter-based Philox generator, so any stream can be
constructed directly without generating its predecessors.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _as_key(index) -> tuple[int, ...]:
    if isinstance(index, (int, np.integer)):
        index = (index,)
    key = tuple(int(i) for i in index)
    if any(i < 0 or i > _MASK64 for i in key):
        raise ValueError(f"stream index components must fit in 64 bits: {index!r}")
    return key


class RngStream:
    """Deterministic random stream keyed by a master seed and an index.

    Two streams with equal ``(seed, index)`` produce identical sequences.
    Use :meth:`spawn` to derive sub-streams, e.g. one per test method within
    a replication.
    """

    __slots__ = ("seed", "index", "generator")

    def __init__(self, seed: int, index=()):
        seed = int(seed)
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.index = _as_key(index)
        ss = np.random.SeedSequence(seed, spawn_key=self.index)
        self.generator = np.random.Generator(np.random.Philox(ss))

    def spawn(self, k: int) -> "RngStream":
        return RngStream(self.seed, self.index + (int(k),))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, index={self.index})"
