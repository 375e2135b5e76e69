"""Counter-based keyed random streams.

Every consumer addresses the Philox-4x64 output stream by absolute word
index, so a value is a pure function of (master seed, stream id, index).
Word w lives in counter block w >> 2, lane w & 3; reading any window of
the stream therefore yields bit-identical values regardless of how the
reads are chunked or scheduled across workers.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
# (word >> 11) keeps the top 53 bits; +0.5 centers each value strictly
# inside (0, 1) so inverse-CDF transforms never see an endpoint.
_U53 = 2.0 ** -53
_SHIFT11 = np.uint64(11)


def keyed_words(master_seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Raw 64-bit words [start, start+count) of the keyed Philox stream."""
    if count < 0 or start < 0:
        raise ValueError(f"invalid word range start={start} count={count}")
    if count == 0:
        return np.empty(0, dtype=np.uint64)
    key = np.array([master_seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    first_block = start >> 2
    n_blocks = ((start + count + 3) >> 2) - first_block
    bg = np.random.Philox(key=key, counter=first_block)
    words = bg.random_raw(4 * n_blocks)
    lo = start - (first_block << 2)
    return words[lo:lo + count]


def keyed_uniforms(master_seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Uniform(0, 1) values at absolute stream indices [start, start+count)."""
    words = keyed_words(master_seed, stream, start, count)
    return ((words >> _SHIFT11).astype(np.float64) + 0.5) * _U53


class RngStream:
    """Sequential view of one keyed stream; re-creating the stream replays it."""

    def __init__(self, master_seed: int, stream: int = 0, offset: int = 0):
        self.master_seed = master_seed
        self.stream = stream
        self.offset = offset

    def uniforms(self, count: int) -> np.ndarray:
        u = keyed_uniforms(self.master_seed, self.stream, self.offset, count)
        self.offset += count
        return u

    def reset(self, offset: int = 0) -> None:
        self.offset = offset

    def __repr__(self) -> str:
        return (f"RngStream(master_seed={self.master_seed}, "
                f"stream={self.stream}, offset={self.offset})")
