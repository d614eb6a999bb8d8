"""Reproducible, position-addressed random streams.

A stream is identified by a 64-bit seed and a tuple of non-negative
integer keys, e.g. ``(replication, ROLE_LEVEL1, b)``.  The generator is
PCG64 seeded through ``numpy.random.SeedSequence(seed, spawn_key=keys)``,
so a given (seed, keys) pair yields the same draws on every platform and
independently of which worker or in which order it is consumed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ROLE_SIMULATION = 0
ROLE_LEVEL1 = 1
ROLE_LEVEL2 = 2
ROLE_NOISE = 3

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    seed: int
    keys: tuple = ()

    def __post_init__(self):
        keys = self.keys if isinstance(self.keys, tuple) else (self.keys,)
        keys = tuple(int(k) for k in keys)
        if any(k < 0 for k in keys):
            raise ValueError("stream keys must be non-negative")
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)
        object.__setattr__(self, "keys", keys)

    def child(self, *keys: int) -> "RngStream":
        return RngStream(self.seed, self.keys + tuple(keys))

    @property
    def stream_id(self) -> int:
        """64-bit digest of the key path."""
        seq = np.random.SeedSequence(0, spawn_key=self.keys)
        return int(seq.generate_state(1, np.uint64)[0])

    def generator(self) -> np.random.Generator:
        return np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self.keys))
        )
