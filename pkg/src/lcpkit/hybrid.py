"""Two-phase linear-time LCP construction.

Phase 1 runs the capped BWT scan into one byte per entry: values up
to ``m`` are exact and ``m + 1`` means "greater than m". Phase 2 resolves the
marked entries in text order over a sparse Phi/PLCP pair indexed by rank in
the mark bit vector, skipping all comparisons for reducible entries.
"""
import os
import tempfile

import numpy as np
from numba import njit

from .bwt import build_bwt
from .errors import InconsistentInputs
from .formats import (BWT, DEFAULT_CHUNK, LCP8, SA, iter_chunks, open_sink,
                      read_header, read_sa, write_lcp8)
from .go import run_scan
from .ledger import ensure
from .rankbv import MarkBits, RankSupport, build_rank, get_bit, rank1_words
from .textcore import INDEX_DTYPE, Text, lcp_dtype

DEFAULT_M = 254


class ByteLcp:
    def __init__(self, vals: np.ndarray, m: int):
        self.vals = vals
        self.m = m

    @property
    def marker(self) -> int:
        return self.m + 1

    @property
    def n(self) -> int:
        return int(self.vals.shape[0])

    def marked(self) -> np.ndarray:
        return np.flatnonzero(self.vals == self.m + 1)

    def to_lcp(self) -> np.ndarray:
        """LCP array for the case without marked entries."""
        if self.marked().size:
            raise InconsistentInputs("byte LCP still has unresolved entries")
        lcp = np.append(self.vals.astype(lcp_dtype(self.n)), -1)
        lcp[0] = -1
        return lcp


def _check_m(m: int):
    if not 1 <= m <= 254:
        raise ValueError(f"threshold m must lie in 1..254, got {m}")


@njit(cache=True)
def _mark(sa, vals, marker, words):
    for k in range(sa.shape[0]):
        if vals[k] == marker:
            p = sa[k]
            words[p >> 6] |= np.uint64(1) << np.uint64(p & 63)


def build_marks(n: int, sa, lcp8, m: int, chunk=DEFAULT_CHUNK, ledger=None) -> MarkBits:
    """Bit j is set when lcp at the SA position of suffix j exceeds m."""
    bits = MarkBits(n)
    if ledger is not None:
        ledger.hold("marks", bits.nbytes)
    for sa_c, v_c in zip(iter_chunks(sa, SA, chunk, ledger, "sa-chunk"),
                         iter_chunks(lcp8, LCP8, chunk, ledger, "lcp8-chunk")):
        _mark(sa_c, v_c, m + 1, bits.words)
    return bits


def phase1(t: Text, sa, bwt, m: int = DEFAULT_M, *, counters=None, ledger=None,
           chunk=DEFAULT_CHUNK):
    """Capped BWT scan, then one streaming pass to set the marks.

    The ledger window ``phase1`` covers the scan; the marks are built after
    it, in the window ``phase1-marks``.
    """
    _check_m(m)
    ledger = ensure(ledger)
    n = t.n
    ledger.hold("text", n)
    with ledger.window("phase1"):
        # index 0 keeps byte 0; its -1 is restored on conversion
        vals = np.zeros(n, dtype=np.uint8)
        ledger.hold("lcp8", n)
        run_scan(t, sa, bwt, vals, m, chunk=chunk, counters=counters, ledger=ledger)
    lcp8 = ByteLcp(vals, m)
    with ledger.window("phase1-marks"):
        marks = build_marks(n, sa, vals, m, chunk, ledger)
    return lcp8, marks


@njit(cache=True)
def _fill_phi(sa, bwt, vals, i0, marker, words, directory, phi, prev):
    # prev = [SA[i-1], BWT[i-1], marked entries seen, marked entries without a bit]
    for k in range(sa.shape[0]):
        i = i0 + k
        if i > 0 and vals[k] == marker:
            prev[2] += 1
            if not get_bit(words, sa[k]):
                prev[3] += 1
            elif bwt[k] != prev[1]:
                phi[rank1_words(words, directory, sa[k])] = prev[0]
        prev[0] = sa[k]
        prev[1] = bwt[k]


@njit(cache=True)
def _sweep(text, words, phi, plcp, m, bot, stats):
    """Text-order pass over the marked positions; stats = [comps, runs, bot_comps, bad]."""
    n = text.shape[0]
    j_i = 0
    ell = np.int64(m + 1)
    prev_marked = False
    for w in range(words.shape[0]):
        word = words[w]
        if word == 0:
            prev_marked = False
            continue
        for off in range(64):
            j = w * 64 + off
            if j >= n:
                break
            if (word >> np.uint64(off)) & np.uint64(1):
                if prev_marked:
                    ell -= 1
                else:
                    ell = m + 1
                p = phi[j_i]
                if p != bot:
                    stats[1] += 1
                    a = j + ell
                    b = p + ell
                    while a < n and b < n:
                        stats[0] += 1
                        if text[a] != text[b]:
                            break
                        ell += 1
                        a += 1
                        b += 1
                elif not prev_marked:
                    # a reducible entry's text predecessor exceeds m as well
                    stats[3] += 1
                plcp[j_i] = ell
                j_i += 1
                prev_marked = True
            else:
                prev_marked = False
    return j_i


@njit(cache=True)
def _scatter(sa, vals, i0, marker, words, directory, plcp, out):
    for k in range(sa.shape[0]):
        v = vals[k]
        if i0 + k == 0:
            out[k] = -1
        elif v == marker:
            out[k] = plcp[rank1_words(words, directory, sa[k])]
        else:
            out[k] = v


def phase2(t: Text, sa, bwt, lcp8, marks: MarkBits, rank: RankSupport | None = None,
           m: int = DEFAULT_M, *, out=None, counters=None, ledger=None, chunk=DEFAULT_CHUNK,
           sparse=None):
    """Resolve the entries phase 1 marked.

    ``sa``, ``bwt`` and ``lcp8`` are consumed as sequential streams (arrays,
    or paths to SA/BWT/byte-LCP files). If ``sparse`` is a dict it receives
    the sparse ``phi`` and ``plcp`` arrays.
    """
    _check_m(m)
    ledger = ensure(ledger)
    n = t.n
    if isinstance(lcp8, ByteLcp):
        lcp8 = lcp8.vals
    if not isinstance(lcp8, np.ndarray):
        with open(lcp8, "rb") as f:
            n8, m8 = read_header(f, LCP8)
        if (n8, m8) != (n, m):
            raise InconsistentInputs(f"byte LCP file has n={n8}, m={m8}; expected n={n}, m={m}")
    elif lcp8.shape[0] != n:
        raise InconsistentInputs("byte LCP length does not match the text")
    if rank is None:
        rank = build_rank(marks)
    ledger.hold("text", n)
    ledger.hold("marks", marks.nbytes)
    ledger.hold("rank", rank.nbytes)
    n_big = rank.ones
    bot = n - 1  # n-1 = SA[0] can only be Phi[SA[1]], and lcp[1] = 0 is never marked
    marker = m + 1

    phi = np.full(n_big, bot, dtype=INDEX_DTYPE)
    ledger.hold("sparse-phi", phi.nbytes)
    prev = np.zeros(4, dtype=np.int64)
    i0 = 0
    for sa_c, b_c, v_c in zip(iter_chunks(sa, SA, chunk, ledger, "sa-chunk"),
                              iter_chunks(bwt, BWT, chunk, ledger, "bwt-chunk"),
                              iter_chunks(lcp8, LCP8, chunk, ledger, "lcp8-chunk")):
        _fill_phi(sa_c, b_c, v_c, i0, marker, marks.words, rank.directory, phi, prev)
        i0 += sa_c.shape[0]
    if prev[3] or prev[2] != n_big:
        raise InconsistentInputs(f"byte LCP marks {prev[2]} entries, the bit vector {n_big}")

    plcp = np.zeros(n_big, dtype=lcp_dtype(n))
    ledger.hold("sparse-plcp", plcp.nbytes)
    stats = np.zeros(4, dtype=np.int64)
    seen = _sweep(t.data, marks.words, phi, plcp, m, bot, stats)
    if seen != n_big:
        raise InconsistentInputs(f"swept {seen} marked positions, rank reports {n_big}")
    if stats[3]:
        raise InconsistentInputs("reducible marked entry without a marked text predecessor")
    if sparse is not None:
        sparse["phi"] = phi
        sparse["plcp"] = plcp
    ledger.release("sparse-phi")
    if counters is not None:
        counters.comparisons += int(stats[0])
        counters.random_accesses += 2 * int(stats[1])
        counters.bump("phase2_comparisons", int(stats[0]))
        counters.bump("phase2_bottom_comparisons", int(stats[2]))
        counters.bump("n_big", n_big)

    outbuf = np.empty(chunk, dtype=lcp_dtype(n))
    ledger.hold("out-chunk", outbuf.nbytes)
    with open_sink(out, n) as sink:
        i0 = 0
        for sa_c, v_c in zip(iter_chunks(sa, SA, chunk, ledger, "sa-chunk"),
                             iter_chunks(lcp8, LCP8, chunk, ledger, "lcp8-chunk")):
            k = sa_c.shape[0]
            _scatter(sa_c, v_c, i0, marker, marks.words, rank.directory, plcp, outbuf)
            sink.write(outbuf[:k])
            i0 += k
    for name in ("sparse-plcp", "out-chunk", "rank", "marks"):
        ledger.release(name)
    return sink.lcp if out is None else None


def lcp_hybrid(t: Text, sa, m: int = DEFAULT_M, *, bwt=None, tmp_dir=None, out=None,
               counters=None, ledger=None, chunk=DEFAULT_CHUNK):
    """Phase 1 then phase 2.

    With ``tmp_dir`` the byte LCP array is written to disk after phase 1 and
    streamed back, so phase 2 keeps only the text, marks, rank directory and
    the two sparse arrays resident.
    """
    _check_m(m)
    ledger = ensure(ledger)
    if bwt is None:
        bwt = build_bwt(t, sa if isinstance(sa, np.ndarray) else read_sa(sa))
    lcp8, marks = phase1(t, sa, bwt, m, counters=counters, ledger=ledger, chunk=chunk)
    rank = build_rank(marks)
    if tmp_dir is None:
        with ledger.window("phase2"):
            return phase2(t, sa, bwt, lcp8, marks, rank, m, out=out, counters=counters,
                          ledger=ledger, chunk=chunk)
    fd, path = tempfile.mkstemp(dir=tmp_dir, prefix="lcpkit-", suffix=".lcp8")
    os.close(fd)
    try:
        write_lcp8(path, lcp8.vals, m)
        del lcp8
        ledger.release("lcp8")
        with ledger.window("phase2"):
            return phase2(t, sa, bwt, path, marks, rank, m, out=out, counters=counters,
                          ledger=ledger, chunk=chunk)
    finally:
        os.unlink(path)

