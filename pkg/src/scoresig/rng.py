"""Seeded, splittable random streams.

A stream is identified by a master seed plus a path of integer indices.
Streams are built on :class:`numpy.random.SeedSequence` spawn keys, so a
child stream is derived in O(1) without drawing from its parent and
sibling streams never overlap. Work split across any number of workers
therefore reproduces the single-worker result exactly, as long as each
unit of work is tied to a fixed stream index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_U64 = 2**64


@dataclass(frozen=True)
class RngStream:
    """Immutable handle on one random substream.

    Attributes
    ----------
    master_seed : int
        Unsigned 64-bit root seed.
    stream_index : int
        Index of this stream among its siblings.
    parent : tuple of int
        Spawn path of the parent stream; empty for top-level streams.
    """

    master_seed: int
    stream_index: int = 0
    parent: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= int(self.master_seed) < _U64:
            raise DomainError(f"master_seed must be an unsigned 64-bit integer, got {self.master_seed}")
        if self.stream_index < 0:
            raise DomainError(f"stream_index must be non-negative, got {self.stream_index}")

    @property
    def spawn_key(self) -> tuple[int, ...]:
        return self.parent + (int(self.stream_index),)

    def substream(self, index: int) -> RngStream:
        """Child stream ``index`` of this stream."""
        return RngStream(self.master_seed, index, self.spawn_key)

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(int(self.master_seed), spawn_key=self.spawn_key)

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))

    def derive_seed(self) -> int:
        """A u64 seed value that identifies this stream's entropy."""
        return int(self.seed_sequence().generate_state(1, np.uint64)[0])


def derive_stream(master_seed: int, task_index: int) -> RngStream:
    """Substream ``task_index`` of the root stream for ``master_seed``."""
    if task_index < 0:
        raise DomainError(f"task_index must be non-negative, got {task_index}")
    return RngStream(master_seed, task_index)


def derive_seed(master_seed: int, task_index: int) -> int:
    """Shorthand for ``derive_stream(master_seed, task_index).derive_seed()``."""
    return derive_stream(master_seed, task_index).derive_seed()
