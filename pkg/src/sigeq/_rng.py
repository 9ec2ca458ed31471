"""Counter-based random streams for reproducible, chunk-invariant sampling.

All randomness in the library is drawn from Philox4x64 in pure counter mode.
Each logical sample owns a fixed-width window of the stream, so a batch
``[start, start + count)`` produces bit-identical values no matter how the
caller chunks it.  Normal variates use the inverse-CDF transform (ndtri), so
the mapping from counter position to value is deterministic across platforms.
"""

from __future__ import annotations

import numpy as np
from numpy.random import Generator, Philox
from scipy.special import ndtri

_U64 = np.uint64
_MASK64 = (1 << 64) - 1

# Smallest positive offset pushing uniforms off 0 so ndtri never sees 0.
_HALF_ULP = 2.0 ** -54

# One Philox counter increment emits 4 64-bit words; random doubles consume
# one word each.
_WORDS_PER_BLOCK = 4


def blocks_per_sample(draws: int) -> int:
    """Philox blocks reserved per sample for ``draws`` uniform doubles."""
    return max(1, -(-draws // _WORDS_PER_BLOCK))


def uniform_block(seed: int, tag: int, start: int, count: int, draws: int) -> np.ndarray:
    """Uniforms in [0, 1) for samples ``start..start+count-1``.

    Returns a ``(count, draws)`` array.  Sample ``i`` always reads the same
    stream window regardless of ``start``/``count`` splits, which makes any
    chunked consumer reproduce the unchunked values exactly.
    """
    if count == 0:
        return np.empty((0, draws))
    bps = blocks_per_sample(draws)
    key = np.array([seed & _MASK64, tag & _MASK64], dtype=_U64)
    bit_gen = Philox(key=key, counter=[start * bps, 0, 0, 0])
    flat = Generator(bit_gen).random(count * bps * _WORDS_PER_BLOCK)
    return flat.reshape(count, bps * _WORDS_PER_BLOCK)[:, :draws]


def normals_from_uniform(u: np.ndarray) -> np.ndarray:
    """Standard normals via the inverse normal CDF."""
    return ndtri(u + _HALF_ULP)
