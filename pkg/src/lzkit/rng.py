"""Seeded random streams.

Every random draw in lzkit comes from numpy's Philox-4x64 counter-based
generator keyed by ``SeedSequence([seed, crc32(stream)])``, so named streams
derived from one seed are independent and reproducible.
"""

from __future__ import annotations

import zlib

import numpy as np


def make_rng(seed: int, *stream) -> np.random.Generator:
    words = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for s in stream:
        words.append(zlib.crc32(str(s).encode()) if not isinstance(s, (int, np.integer)) else int(s) & 0xFFFFFFFF)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))
