"""LCP construction driven by one BWT scan, plus its queue-streaming variant.

Both scans run i = 1..n-1 over SA and BWT in order. LF[i] is not read from a
stream: it is C[BWT[i]] + cnt[BWT[i]], where cnt holds the occurrences seen so
far. The same counters answer whether lcp[i] was already produced by an
earlier forward jump, which happens exactly when i < C[F[i]] + cnt[F[i]].

The range-minimum stack holds (index, lcp) pairs strictly increasing in both
components. After every sigma-th push it is trimmed to the entries some
future query can still return, so it never holds more than 2 * sigma pairs.
"""
import os
import tempfile

import numpy as np
from numba import njit

from .counters import Counters
from .errors import NotFound, QueueResidue, QueueUnderflow
from .formats import BWT, DEFAULT_CHUNK, SA, iter_chunks, open_sink, stream_length
from .ledger import ensure
from .prefetch import prefetch
from .textcore import Text, alphabet, build_c_array, lcp_dtype

UNDEF = -2
STACK_CAP = 2 * 256 + 2
# SA is streamed, so the suffix read PREFETCH_AHEAD steps later is known now
PREFETCH_AHEAD = 16

# scan state slots
_SIZE, _PUSHES, _PREV_SA, _PREV_BWT, _COMPS, _RUNS, _MAXSTK, _SHADOW = range(8)
_L12, _L14, _SKIPS, _ENQ, _DEQ, _RESUME, _TRIMS = range(8, 15)
_NSTATE = 16


@njit(cache=True)
def stack_push(idx, val, size, i, v):
    while size > 0 and val[size - 1] >= v:
        size -= 1
    idx[size] = i
    val[size] = v
    return size + 1


@njit(cache=True)
def stack_find(idx, size, x):
    """Position of the entry with the smallest index >= x, or -1."""
    if size == 0 or idx[size - 1] < x:
        return -1
    # a run in the BWT queries from the previous index: answer is on top
    if size == 1 or idx[size - 2] < x:
        return size - 1
    lo = 0
    hi = size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if idx[mid] >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


@njit(cache=True)
def stack_trim(idx, val, size, lastocc, chars, keep):
    for p in range(size):
        keep[p] = False
    for c in chars:
        p = stack_find(idx, size, lastocc[c] + 1)
        if p >= 0:
            keep[p] = True
    k = 0
    for p in range(size):
        if keep[p]:
            idx[k] = idx[p]
            val[k] = val[p]
            k += 1
    return k


class RmqStack:
    """The O(sigma) range-minimum stack as a standalone object."""

    def __init__(self, entries=()):
        self.idx = np.zeros(STACK_CAP, dtype=np.int64)
        self.val = np.zeros(STACK_CAP, dtype=np.int64)
        self.size = 0
        for i, v in entries:
            self.idx[self.size] = i
            self.val[self.size] = v
            self.size += 1

    def entries(self):
        return [(int(self.idx[p]), int(self.val[p])) for p in range(self.size)]

    def push(self, i: int, v: int):
        self.size = stack_push(self.idx, self.val, self.size, i, v)

    def query(self, x: int):
        p = stack_find(self.idx, self.size, x)
        if p < 0:
            raise NotFound(f"no stack entry with index >= {x}")
        return int(self.idx[p]), int(self.val[p])

    def trim(self, lastocc, chars=None):
        """Drop entries no query from lastocc[c] + 1 can return.

        Only acts when the stack holds more than sigma = len(chars) entries.
        """
        chars = np.arange(256) if chars is None else np.asarray(chars)
        if self.size <= chars.shape[0]:
            return
        keep = np.zeros(STACK_CAP, dtype=np.bool_)
        lastocc = np.asarray(lastocc, dtype=np.int64)
        self.size = stack_trim(self.idx, self.val, self.size, lastocc, chars.astype(np.int64), keep)

    def __len__(self):
        return self.size


def rmq_push(k: RmqStack, i: int, v: int):
    k.push(i, v)


def rmq_query(k: RmqStack, x: int):
    return k.query(x)


def rmq_trim(k: RmqStack, lastocc, chars=None):
    k.trim(lastocc, chars)


def is_defined(i: int, fi: int, c, cnt) -> bool:
    """Whether lcp[i] was produced before iteration i.

    ``cnt`` must hold the byte counts of BWT[0..i-1]. lcp[i] is set early
    exactly when the BWT occurrence of F[i] that LF maps to i lies before i.
    """
    return i < int(c[fi]) + int(cnt[fi])


@njit(cache=True)
def _scan(text, sa, bwt, i0, carr, cnt, lastocc, chars, sidx, sval, keep, st, lcp, m, stop, check):
    n = text.shape[0]
    sigma = chars.shape[0]
    cap = m + 1
    size = st[_SIZE]
    prev_sa = st[_PREV_SA]
    prev_bwt = st[_PREV_BWT]
    comps = 0
    runs = 0
    last = sa.shape[0]
    for k in range(last):
        i = i0 + k
        if i > stop:
            break
        if k + PREFETCH_AHEAD < last:
            prefetch(text, sa[k + PREFETCH_AHEAD])
        s_i = sa[k]
        b_i = bwt[k]
        lf_i = carr[b_i] + cnt[b_i]
        if i == 0:
            if n > 1:
                lcp[lf_i] = 0
            size = stack_push(sidx, sval, 0, 0, -1)
            # iteration 0 counts as an occurrence of BWT[0] for later prev() lookups
            lastocc[b_i] = 0
            cnt[b_i] += 1
            prev_sa = s_i
            prev_bwt = b_i
            continue
        f_i = text[s_i]
        defined = i < carr[f_i] + cnt[f_i]
        if check and defined == (np.int64(lcp[i]) == UNDEF):
            st[_SHADOW] += 1
        if defined:
            v = np.int64(lcp[i])
        else:
            ell = np.int64(0)
            skip = False
            if lf_i < i:
                ell = max(np.int64(lcp[lf_i]) - 1, 0)
                if b_i == prev_bwt and ell < m:
                    skip = True
            if skip:
                st[_SKIPS] += 1
            else:
                runs += 1
                a = s_i + ell
                b = prev_sa + ell
                while ell < cap:
                    comps += 1
                    if text[a] != text[b]:
                        break
                    ell += 1
                    a += 1
                    b += 1
            lcp[i] = ell
            v = ell
            st[_L12] += 1
        size = stack_push(sidx, sval, size, i, v)
        st[_PUSHES] += 1
        if size > st[_MAXSTK]:
            st[_MAXSTK] = size
        if lf_i > i:
            x = lastocc[b_i] + 1
            p = stack_find(sidx, size, x)
            w = sval[p] + 1
            if w > cap:
                w = cap
            if check:
                lo = np.int64(lcp[x])
                for q in range(x + 1, i + 1):
                    if np.int64(lcp[q]) < lo:
                        lo = np.int64(lcp[q])
                if min(lo + 1, cap) != w:
                    st[_SHADOW] += 1
            lcp[lf_i] = w
            st[_L14] += 1
        lastocc[b_i] = i
        cnt[b_i] += 1
        if st[_PUSHES] % sigma == 0 and size > sigma:
            size = stack_trim(sidx, sval, size, lastocc, chars, keep)
            st[_TRIMS] += 1
        prev_sa = s_i
        prev_bwt = b_i
    st[_SIZE] = size
    st[_PREV_SA] = prev_sa
    st[_PREV_BWT] = prev_bwt
    st[_COMPS] += comps
    st[_RUNS] += runs


class _ScanState:
    def __init__(self, t: Text):
        self.carr = build_c_array(t)
        self.cnt = np.zeros(256, dtype=np.int64)
        self.lastocc = np.full(256, -1, dtype=np.int64)
        self.chars = alphabet(t)
        self.sidx = np.zeros(STACK_CAP, dtype=np.int64)
        self.sval = np.zeros(STACK_CAP, dtype=np.int64)
        self.keep = np.zeros(STACK_CAP, dtype=np.bool_)
        self.st = np.zeros(_NSTATE, dtype=np.int64)

    @property
    def nbytes(self) -> int:
        return sum(a.nbytes for a in (self.carr, self.cnt, self.lastocc, self.chars,
                                      self.sidx, self.sval, self.keep, self.st))

    def report(self, counters: Counters | None):
        if counters is None:
            return
        st = self.st
        counters.comparisons += int(st[_COMPS])
        counters.random_accesses += 2 * int(st[_RUNS])
        for key, slot in (("line12", _L12), ("line14", _L14), ("skips", _SKIPS),
                          ("max_stack", _MAXSTK), ("shadow_mismatches", _SHADOW),
                          ("enqueues", _ENQ), ("dequeues", _DEQ), ("trims", _TRIMS)):
            counters.bump(key, int(st[slot]))
        counters.extra["sigma"] = int(self.chars.shape[0])


def run_scan(t: Text, sa, bwt, lcp, m: int, *, stop=None, check=False,
             chunk=DEFAULT_CHUNK, counters=None, ledger=None):
    """Drive the BWT scan over SA/BWT chunks, writing into ``lcp``.

    ``lcp`` is random-access working memory: a signed array of n+1 entries for
    the exact algorithm or a uint8 array of n entries for the capped first
    phase (values above ``m`` stored as m+1).
    """
    state = _ScanState(t)
    if ledger is not None:
        ledger.hold("scan-state", state.nbytes)
    stop = t.n if stop is None else stop
    i0 = 0
    for sa_c, bwt_c in zip(iter_chunks(sa, SA, chunk, ledger, "sa-chunk"),
                           iter_chunks(bwt, BWT, chunk, ledger, "bwt-chunk")):
        if i0 > stop:
            break
        _scan(t.data, sa_c, bwt_c, i0, state.carr, state.cnt, state.lastocc, state.chars,
              state.sidx, state.sval, state.keep, state.st, lcp, m, stop, check)
        i0 += sa_c.shape[0]
    if ledger is not None:
        ledger.release("scan-state")
    state.report(counters)
    return state


def lcp_go(t: Text, sa, bwt, *, stop=None, check=False, counters=None, ledger=None,
           chunk=DEFAULT_CHUNK) -> np.ndarray:
    """Exact LCP array from the BWT scan, with the whole LCP array in memory.

    With ``stop=j`` only iterations 0..j run and entries not computed yet hold
    ``UNDEF``. With ``check=True`` every stack answer and every definedness
    test is compared against a naive recomputation; disagreements are counted
    in ``counters.extra["shadow_mismatches"]``.
    """
    ledger = ensure(ledger)
    n = t.n
    ledger.hold("text", n)
    lcp = np.full(n + 1, UNDEF, dtype=lcp_dtype(n))
    ledger.hold("lcp", lcp.nbytes)
    lcp[0] = -1
    lcp[n] = -1
    run_scan(t, sa, bwt, lcp, n, stop=stop, check=check, chunk=chunk,
             counters=counters, ledger=ledger)
    return lcp


# -- queue-streaming variant -------------------------------------------------

@njit(cache=True)
def _deq(q, head, tail, hs, hl, tl):
    if hl[q] == 0:
        t = tl[q]
        for p in range(t):
            head[q, p] = tail[q, p]
        hs[q] = 0
        hl[q] = t
        tl[q] = 0
    v = head[q, hs[q]]
    hs[q] += 1
    hl[q] -= 1
    return v


@njit(cache=True)
def _enq(q, v, tail, tl):
    tail[q, tl[q]] = v
    tl[q] += 1


@njit(cache=True)
def _go2_scan(text, sa, bwt, i0, k0, carr, cnt, lastocc, chars, sidx, sval, keep, st, out,
              head, tail, hs, hl, tl, disk):
    """Returns -1 when the chunk is done, -2 on underflow, else a queue to service."""
    n = text.shape[0]
    half = head.shape[1]
    sigma = chars.shape[0]
    size = st[_SIZE]
    prev_sa = st[_PREV_SA]
    prev_bwt = st[_PREV_BWT]
    last = sa.shape[0]
    for k in range(k0, last):
        i = i0 + k
        if k + PREFETCH_AHEAD < last:
            prefetch(text, sa[k + PREFETCH_AHEAD])
        s_i = sa[k]
        b_i = bwt[k]
        lf_i = carr[b_i] + cnt[b_i]
        if i == 0:
            out[k] = -1
            if n > 1:
                # lcp[0] = -1 feeds the sentinel row's line-7 read, lcp[LF[0]] = 0
                _enq(0, -1, tail, tl)
                _enq(b_i, 0, tail, tl)
                st[_ENQ] += 2
            size = stack_push(sidx, sval, 0, 0, -1)
            lastocc[b_i] = 0
            cnt[b_i] += 1
            prev_sa = s_i
            prev_bwt = b_i
            continue
        f_i = text[s_i]
        defined = i < carr[f_i] + cnt[f_i]
        back = lf_i < i
        fwd = lf_i > i

        # make sure this iteration's queue traffic needs no disk I/O
        for r in range(2):
            q = b_i if r == 0 else f_i
            if r == 1 and f_i == b_i:
                break
            ndeq = 0
            nenq = 0
            if q == b_i:
                ndeq += back
                nenq += fwd
            if q == f_i:
                ndeq += defined
                nenq += not defined
            if (ndeq > 0 and hl[q] < ndeq and disk[q] > 0) or (nenq > 0 and tl[q] > half - nenq):
                st[_SIZE] = size
                st[_PREV_SA] = prev_sa
                st[_PREV_BWT] = prev_bwt
                st[_RESUME] = k
                return q

        # lcp[LF[i]] < i sits in Q_BWT[i] ahead of lcp[i]; pop it even if unused
        v7 = np.int64(0)
        if back:
            if hl[b_i] + tl[b_i] == 0:
                st[_RESUME] = k
                return -2
            v7 = _deq(b_i, head, tail, hs, hl, tl)
            st[_DEQ] += 1
        if defined:
            if hl[f_i] + tl[f_i] == 0:
                st[_RESUME] = k
                return -2
            v = _deq(f_i, head, tail, hs, hl, tl)
            st[_DEQ] += 1
        else:
            ell = np.int64(0)
            skip = False
            if back:
                ell = max(v7 - 1, 0)
                if b_i == prev_bwt:
                    skip = True
            if skip:
                st[_SKIPS] += 1
            else:
                st[_RUNS] += 1
                a = s_i + ell
                b = prev_sa + ell
                while True:
                    st[_COMPS] += 1
                    if text[a] != text[b]:
                        break
                    ell += 1
                    a += 1
                    b += 1
            v = ell
            _enq(f_i, v, tail, tl)
            st[_ENQ] += 1
            st[_L12] += 1
        size = stack_push(sidx, sval, size, i, v)
        st[_PUSHES] += 1
        if size > st[_MAXSTK]:
            st[_MAXSTK] = size
        if fwd:
            p = stack_find(sidx, size, lastocc[b_i] + 1)
            _enq(b_i, sval[p] + 1, tail, tl)
            st[_ENQ] += 1
            st[_L14] += 1
        lastocc[b_i] = i
        cnt[b_i] += 1
        if st[_PUSHES] % sigma == 0 and size > sigma:
            size = stack_trim(sidx, sval, size, lastocc, chars, keep)
            st[_TRIMS] += 1
        prev_sa = s_i
        prev_bwt = b_i
        out[k] = v
    st[_SIZE] = size
    st[_PREV_SA] = prev_sa
    st[_PREV_BWT] = prev_bwt
    return -1


class CharQueues:
    """One FIFO per byte value: an in-memory head and tail half-buffer each,
    with overflow spilled to a per-queue file between them.

    Items are always ordered head, then disk, then tail.
    """

    ITEM = 8

    def __init__(self, queue_buf: int, tmp_dir):
        half = queue_buf // (2 * self.ITEM)
        if half < 2:
            raise ValueError("queue buffer must hold at least 4 entries (32 bytes)")
        self.queue_buf = queue_buf
        self.half = half
        self.head = np.zeros((256, half), dtype=np.int64)
        self.tail = np.zeros((256, half), dtype=np.int64)
        self.hs = np.zeros(256, dtype=np.int64)
        self.hl = np.zeros(256, dtype=np.int64)
        self.tl = np.zeros(256, dtype=np.int64)
        self.disk = np.zeros(256, dtype=np.int64)
        self.tmp_dir = tmp_dir
        self._files = {}
        self._roff = np.zeros(256, dtype=np.int64)
        self._woff = np.zeros(256, dtype=np.int64)
        self.spills = 0
        self.refills = 0

    @property
    def nbytes(self) -> int:
        return self.head.nbytes + self.tail.nbytes

    def _file(self, q):
        f = self._files.get(q)
        if f is None:
            f = open(os.path.join(self.tmp_dir, f"q{q:03d}.bin"), "w+b")
            self._files[q] = f
        return f

    def service(self, q: int):
        if self.tl[q] > self.half - 2:
            t = self.tl[q]
            if self.disk[q] == 0 and self.hl[q] == 0:
                self.head[q, :t] = self.tail[q, :t]
                self.hs[q] = 0
                self.hl[q] = t
            else:
                f = self._file(q)
                f.seek(self._woff[q])
                f.write(self.tail[q, :t].tobytes())
                self._woff[q] += t * self.ITEM
                self.disk[q] += t
                self.spills += 1
            self.tl[q] = 0
        if self.hl[q] < 2 and self.disk[q] > 0:
            h = self.hl[q]
            self.head[q, :h] = self.head[q, self.hs[q]:self.hs[q] + h]
            self.hs[q] = 0
            r = min(int(self.disk[q]), self.half - int(h))
            f = self._file(q)
            f.seek(self._roff[q])
            self.head[q, h:h + r] = np.frombuffer(f.read(r * self.ITEM), dtype=np.int64)
            self._roff[q] += r * self.ITEM
            self.disk[q] -= r
            self.hl[q] = h + r
            self.refills += 1

    def residue(self) -> int:
        return int(self.hl.sum() + self.tl.sum() + self.disk.sum())

    def close(self):
        for f in self._files.values():
            f.close()
        self._files.clear()


def lcp_go2(t: Text, sa, bwt, *, queue_buf: int = 65536, tmp_dir=None, out=None,
            chunk=DEFAULT_CHUNK, counters=None, ledger=None):
    """Semi-external BWT scan.

    ``sa`` and ``bwt`` are arrays or paths to serialized SA/BWT files and are
    read strictly sequentially. Only the text and the 256 queue buffers are
    resident. Output goes to the LCP file ``out`` when given, otherwise it is
    collected and returned as an n+1 array.
    """
    ledger = ensure(ledger)
    n = t.n
    if stream_length(sa, SA) != n or stream_length(bwt, BWT) != n:
        raise ValueError("SA/BWT length does not match the text")
    ledger.hold("text", n)
    state = _ScanState(t)
    ledger.hold("scan-state", state.nbytes)
    with tempfile.TemporaryDirectory(dir=tmp_dir, prefix="lcpkit-q-") as qdir:
        queues = CharQueues(queue_buf, qdir)
        ledger.hold("queues", 256 * queue_buf)
        outbuf = np.empty(chunk, dtype=lcp_dtype(n))
        ledger.hold("out-chunk", outbuf.nbytes)
        try:
            with open_sink(out, n) as sink:
                i0 = 0
                for sa_c, bwt_c in zip(iter_chunks(sa, SA, chunk, ledger, "sa-chunk"),
                                       iter_chunks(bwt, BWT, chunk, ledger, "bwt-chunk")):
                    k = 0
                    while True:
                        code = _go2_scan(t.data, sa_c, bwt_c, i0, k, state.carr, state.cnt,
                                         state.lastocc, state.chars, state.sidx, state.sval,
                                         state.keep, state.st, outbuf, queues.head, queues.tail,
                                         queues.hs, queues.hl, queues.tl, queues.disk)
                        if code == -1:
                            break
                        k = int(state.st[_RESUME])
                        if code == -2:
                            raise QueueUnderflow(f"dequeue from an empty queue at index {i0 + k}")
                        queues.service(code)
                    sink.write(outbuf[:sa_c.shape[0]])
                    i0 += sa_c.shape[0]
                if queues.residue():
                    raise QueueResidue(f"{queues.residue()} lcp values left in queues")
        finally:
            queues.close()
            for name in ("queues", "out-chunk", "scan-state"):
                ledger.release(name)
    state.report(counters)
    if counters is not None:
        counters.bump("spills", queues.spills)
        counters.bump("refills", queues.refills)
    return sink.lcp if out is None else None
