"""Seeding helpers.

Every sampling routine takes an explicit 64-bit seed and builds its generator
from a counter-based bit stream (Philox), so equal seeds give bit-identical
sample streams.  Ensembles that need independent members use `substreams`,
which spawns order-independent child streams: member i is the same whether it
is drawn first, last, or in parallel.
"""

from __future__ import annotations

import numpy as np


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if isinstance(seed, (tuple, list)):
        return np.random.SeedSequence([int(s) for s in seed])
    return np.random.SeedSequence(int(seed))


def generator(seed) -> np.random.Generator:
    """Counter-based generator for a 64-bit seed (int, tuple of ints, or
    SeedSequence)."""
    return np.random.Generator(np.random.Philox(_seed_sequence(seed)))


def substreams(seed, n: int) -> list[np.random.Generator]:
    """n independent child generators of `seed`, stable under reordering."""
    children = _seed_sequence(seed).spawn(n)
    return [np.random.Generator(np.random.Philox(c)) for c in children]
