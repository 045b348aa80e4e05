"""Text loading and alphabet statistics.

The sentinel is byte 0x00. It is appended by :func:`load_text` and must not
occur anywhere else, which makes it the unique smallest symbol.
"""
from dataclasses import dataclass

import numpy as np

from .errors import EmbeddedSentinel, TooLarge

SENTINEL = 0
# indices must fit uint32 and the -1 boundary must fit int32
MAX_N = 2**32 - 2
# suffix indices, Phi values and the LCP value bound all fit here
INDEX_DTYPE = np.uint32


@dataclass(frozen=True)
class Text:
    data: np.ndarray  # uint8, sentinel included

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    def raw(self) -> bytes:
        return self.data[:-1].tobytes()

    def __len__(self):
        return self.n


def load_text(raw) -> Text:
    raw = bytes(raw)
    if len(raw) + 1 > MAX_N:
        raise TooLarge(f"text of {len(raw)} bytes exceeds the {MAX_N - 1} byte limit")
    pos = raw.find(b"\x00")
    if pos >= 0:
        raise EmbeddedSentinel(f"input contains byte 0x00 at offset {pos}")
    data = np.empty(len(raw) + 1, dtype=np.uint8)
    data[:-1] = np.frombuffer(raw, dtype=np.uint8)
    data[-1] = SENTINEL
    data.flags.writeable = False
    return Text(data)


def lcp_dtype(n: int):
    """int32 while every lcp value fits, matching the on-disk width; else int64."""
    return np.int32 if n < 2**31 else np.int64


def build_c_array(t: Text) -> np.ndarray:
    """c[x] = number of text positions holding a byte smaller than x (length 257)."""
    freq = np.bincount(t.data, minlength=256)
    c = np.zeros(257, dtype=np.int64)
    np.cumsum(freq, out=c[1:])
    return c


def alphabet(t: Text) -> np.ndarray:
    """Distinct bytes present in the text, ascending (sentinel included)."""
    return np.flatnonzero(np.bincount(t.data, minlength=256)).astype(np.int64)


def sigma_effective(t: Text) -> int:
    return int(alphabet(t).shape[0])
