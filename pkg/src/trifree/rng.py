"""Seed splitting: every random stream is a pure function of (seed, labels)."""

from __future__ import annotations

import math
import zlib

import numpy as np


def _label(x) -> int:
    if isinstance(x, (int, np.integer)):
        if x < 0:
            raise ValueError("integer labels must be non-negative")
        return int(x)
    return zlib.crc32(str(x).encode())


def derive_rng(seed: int | None, *labels) -> np.random.Generator:
    """Independent generator for the stream named by ``labels`` under ``seed``.

    Streams for different label tuples do not depend on the order in which
    they are created, so rounds and branches can run in any order.
    """
    if seed is None:
        seed = 0
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=tuple(_label(x) for x in labels))
    return np.random.Generator(np.random.PCG64(ss))


def log2_ceil(n: int) -> int:
    """ceil(log2 n), and 1 for n <= 2 so round counts never vanish."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1
