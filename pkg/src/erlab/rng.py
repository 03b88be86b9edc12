"""Reproducible, splittable random streams.

Every randomized operation takes an explicit :class:`RngConfig`.  The
underlying generator is numpy's counter-based Philox keyed by
``(seed, stream)``, so identical configs give identical draws on every
platform, and independent streams can be handed to parallel workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngConfig:
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)
        object.__setattr__(self, "stream", int(self.stream) & _MASK64)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=(self.seed << 64) | self.stream))

    def child(self, index: int) -> "RngConfig":
        """An independent stream derived from this one and ``index``."""
        state = np.random.SeedSequence([self.seed, self.stream, int(index)]).generate_state(
            1, np.uint64
        )
        return RngConfig(self.seed, int(state[0]))

    def to_json(self) -> dict:
        return {"seed": str(self.seed), "stream": str(self.stream)}
