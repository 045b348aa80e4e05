"""Plain bit vector with a one-level rank directory.

Bits are stored little-endian in uint64 words: bit j lives in word j >> 6 at
offset j & 63. The directory keeps one cumulative 32-bit count per 512-bit
block; a query adds at most eight word popcounts to the directory entry.
"""
import numpy as np
from numba import njit

from .errors import OutOfRange

BLOCK_WORDS = 8  # 512 bits


@njit(cache=True)
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def rank1_words(words, directory, j):
    """Number of set bits strictly before position j."""
    wj = j >> 6
    block = wj >> 3
    r = np.int64(directory[block])
    for w in range(block * 8, wj):
        r += popcount64(words[w])
    off = j & 63
    if off:
        r += popcount64(words[wj] & ((np.uint64(1) << np.uint64(off)) - np.uint64(1)))
    return r


@njit(cache=True)
def get_bit(words, j):
    return (words[j >> 6] >> np.uint64(j & 63)) & np.uint64(1)


class MarkBits:
    def __init__(self, n: int, words: np.ndarray | None = None):
        self.n = n
        if words is None:
            words = np.zeros(n_words(n), dtype=np.uint64)
        self.words = words

    @classmethod
    def from_positions(cls, n: int, positions) -> "MarkBits":
        b = cls(n)
        pos = np.asarray(positions, dtype=np.int64)
        np.bitwise_or.at(b.words, pos >> 6, np.left_shift(np.uint64(1), (pos & 63).astype(np.uint64)))
        return b

    @classmethod
    def from_bools(cls, flags) -> "MarkBits":
        flags = np.asarray(flags, dtype=bool)
        return cls.from_positions(flags.shape[0], np.flatnonzero(flags))

    @property
    def ones(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise OutOfRange(j)
        return int(get_bit(self.words, j))

    def __len__(self):
        return self.n

    def to_bools(self) -> np.ndarray:
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return bits[: self.n].astype(bool)

    @property
    def nbytes(self) -> int:
        return self.words.nbytes


def n_words(n: int) -> int:
    # padded to whole blocks so every directory entry covers eight words
    blocks = (n + 511) // 512
    return max(blocks, 1) * BLOCK_WORDS


class RankSupport:
    def __init__(self, bits: MarkBits, directory: np.ndarray):
        self.bits = bits
        self.directory = directory

    @property
    def ones(self) -> int:
        return int(self.directory[-1])

    @property
    def nbytes(self) -> int:
        return self.directory.nbytes

    def rank1_excl(self, j: int) -> int:
        if not 0 <= j <= self.bits.n:
            raise OutOfRange(f"rank position {j} outside [0, {self.bits.n}]")
        return int(rank1_words(self.bits.words, self.directory, j))


def build_rank(b: MarkBits) -> RankSupport:
    per_block = np.bitwise_count(b.words).reshape(-1, BLOCK_WORDS).sum(axis=1)
    directory = np.zeros(per_block.shape[0] + 1, dtype=np.uint32)
    np.cumsum(per_block, out=directory[1:])
    return RankSupport(b, directory)


def rank1_excl(r: RankSupport, j: int) -> int:
    return r.rank1_excl(j)
