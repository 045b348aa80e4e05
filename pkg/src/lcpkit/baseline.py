"""Reference LCP constructions: brute force, Kasai et al., and the Phi algorithm.

An LCP array has n+1 entries with lcp[0] = lcp[n] = -1. Working arrays are
32 bits wide, which roughly halves the cache misses of the random accesses.
"""
import numpy as np
from numba import njit

from .counters import Counters
from .ledger import ensure
from .prefetch import prefetch
from .sarray import invert
from .textcore import INDEX_DTYPE, Text, lcp_dtype


@njit(cache=True)
def _brute(text, sa, lcp):
    n = sa.shape[0]
    lcp[0] = -1
    lcp[n] = -1
    comps = 0
    for i in range(1, n):
        a = sa[i - 1]
        b = sa[i]
        h = 0
        while True:
            comps += 1
            if text[a + h] != text[b + h]:
                break
            h += 1
        lcp[i] = h
    return comps


def lcp_bruteforce(t: Text, sa: np.ndarray, counters: Counters | None = None) -> np.ndarray:
    lcp = np.empty(t.n + 1, dtype=lcp_dtype(t.n))
    comps = _brute(t.data, sa, lcp)
    if counters is not None:
        counters.comparisons += int(comps)
        counters.random_accesses += 2 * max(t.n - 1, 0)
    return lcp


# ranks are read in text order, so the rank handled PREFETCH_AHEAD steps later
# is already known; its slot, then the text it points to, are fetched early
PREFETCH_AHEAD = 32


@njit(cache=True)
def _kasai(text, sa, isa, lcp):
    n = sa.shape[0]
    # lcp[r] holds SA[r-1] until rank r is processed, so each step makes one
    # random access into this array instead of one into SA and one into lcp
    for r in range(1, n):
        lcp[r] = sa[r - 1]
    lcp[0] = -1
    lcp[n] = -1
    comps = 0
    runs = 0
    h = 0
    half = PREFETCH_AHEAD // 2
    for i in range(n):
        if i + PREFETCH_AHEAD < n:
            prefetch(lcp, isa[i + PREFETCH_AHEAD])
        if i + half < n:
            r2 = isa[i + half]
            if r2 > 0:
                prefetch(text, np.int64(lcp[r2]) + h)
        r = isa[i]
        if r == 0:
            h = 0
            continue
        j = np.int64(lcp[r])
        runs += 1
        while True:
            comps += 1
            if text[i + h] != text[j + h]:
                break
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return comps, runs


def lcp_kasai(t: Text, sa: np.ndarray, isa: np.ndarray | None = None,
              counters: Counters | None = None, ledger=None) -> np.ndarray:
    ledger = ensure(ledger)
    n = t.n
    ledger.hold("text", n)
    ledger.hold("sa", sa.nbytes)
    if isa is None:
        isa = invert(sa)
    ledger.hold("isa", isa.nbytes)
    lcp = np.empty(n + 1, dtype=lcp_dtype(n))
    ledger.hold("lcp", lcp.nbytes)
    comps, runs = _kasai(t.data, sa, isa, lcp)
    if counters is not None:
        counters.comparisons += int(comps)
        counters.random_accesses += 2 * int(runs)
    return lcp


@njit(cache=True)
def _phi_plcp(text, sa, phi, plcp):
    n = sa.shape[0]
    # the sentinel suffix sa[0] = n-1 has no predecessor; point it at itself
    phi[sa[0]] = n - 1
    for i in range(1, n):
        phi[sa[i]] = sa[i - 1]
    comps = 0
    runs = 0
    h = 0
    for j in range(n):
        if j == sa[0]:
            plcp[j] = 0
            h = 0
            continue
        p = phi[j]
        runs += 1
        while True:
            comps += 1
            if text[j + h] != text[p + h]:
                break
            h += 1
        plcp[j] = h
        if h > 0:
            h -= 1
    return comps, runs


def phi_plcp(t: Text, sa: np.ndarray, counters: Counters | None = None):
    """Dense Phi and PLCP arrays in text order."""
    phi = np.empty(t.n, dtype=INDEX_DTYPE)
    plcp = np.empty(t.n, dtype=lcp_dtype(t.n))
    comps, runs = _phi_plcp(t.data, sa, phi, plcp)
    if counters is not None:
        counters.comparisons += int(comps)
        counters.random_accesses += 2 * int(runs)
    return phi, plcp


@njit(cache=True)
def _scatter(sa, plcp, lcp):
    for i in range(1, sa.shape[0]):
        lcp[i] = plcp[sa[i]]


def lcp_phi(t: Text, sa: np.ndarray, counters: Counters | None = None, ledger=None) -> np.ndarray:
    ledger = ensure(ledger)
    n = t.n
    ledger.hold("text", n)
    ledger.hold("sa", sa.nbytes)
    phi, plcp = phi_plcp(t, sa, counters)
    ledger.hold("phi", phi.nbytes)
    ledger.hold("plcp", plcp.nbytes)
    del phi
    ledger.release("phi")
    lcp = np.empty(n + 1, dtype=plcp.dtype)
    ledger.hold("lcp", lcp.nbytes)
    _scatter(sa, plcp, lcp)
    lcp[0] = -1
    lcp[n] = -1
    return lcp
