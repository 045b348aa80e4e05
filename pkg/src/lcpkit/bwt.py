"""Burrows-Wheeler transform, F column and LF-mapping."""
import numpy as np
from numba import njit

from .textcore import INDEX_DTYPE, Text


@njit(cache=True)
def _bwt(text, sa, out):
    for i in range(sa.shape[0]):
        # sa == 0 wraps to text[-1], which is the sentinel
        out[i] = text[sa[i] - 1]


def build_bwt(t: Text, sa: np.ndarray) -> np.ndarray:
    out = np.empty(sa.shape[0], dtype=np.uint8)
    _bwt(t.data, sa, out)
    return out


def f_column(t: Text, sa: np.ndarray) -> np.ndarray:
    return t.data[sa]


@njit(cache=True)
def _lf(bwt, c):
    n = bwt.shape[0]
    occ = np.zeros(256, np.int64)
    lf = np.empty(n, INDEX_DTYPE)
    for i in range(n):
        x = bwt[i]
        lf[i] = c[x] + occ[x]
        occ[x] += 1
    return lf


def build_lf(bwt: np.ndarray, c: np.ndarray) -> np.ndarray:
    """LF[i] = C[c] + occ(c, i) with c = BWT[i].

    occ(c, i) counts c in BWT[0..i-1], excluding position i itself; this is the
    convention that reproduces the worked example (LF[0] = C['n'] + 0 = 15 for
    "el_anele_lepanelen$"). The sentinel row gets C[0] + 0 = 0.
    """
    return _lf(np.asarray(bwt, dtype=np.uint8), np.asarray(c, dtype=np.int64))


class OccCounter:
    """Running per-byte counts over a left-to-right BWT scan.

    Before :meth:`advance` is called for position i, ``cnt[x]`` equals occ(x, i).
    """

    def __init__(self):
        self.cnt = np.zeros(256, dtype=np.int64)

    def occ(self, x: int) -> int:
        return int(self.cnt[x])

    def advance(self, x: int):
        self.cnt[x] += 1


def bwt_run_count(bwt) -> int:
    b = np.asarray(bwt, dtype=np.uint8)
    if b.shape[0] == 0:
        return 0
    return int(np.count_nonzero(b[1:] != b[:-1])) + 1
