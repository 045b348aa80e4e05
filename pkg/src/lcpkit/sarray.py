"""Suffix array construction (SA-IS), inversion and verification."""
import numpy as np
from numba import njit

from .textcore import INDEX_DTYPE, Text


@njit(cache=True)
def _classify(s):
    n = s.shape[0]
    stype = np.zeros(n, np.bool_)
    stype[n - 1] = True
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and stype[i + 1]):
            stype[i] = True
    return stype


@njit(cache=True)
def _buckets(s, k, ends):
    counts = np.zeros(k, np.int64)
    for x in s:
        counts[x] += 1
    b = np.empty(k, np.int64)
    acc = 0
    for c in range(k):
        acc += counts[c]
        b[c] = acc if ends else acc - counts[c]
    return b


@njit(cache=True)
def _induce(s, sa, stype, k):
    n = s.shape[0]
    bkt = _buckets(s, k, False)
    for i in range(n):
        j = sa[i] - 1
        if sa[i] > 0 and not stype[j]:
            sa[bkt[s[j]]] = j
            bkt[s[j]] += 1
    bkt = _buckets(s, k, True)
    for i in range(n - 1, -1, -1):
        j = sa[i] - 1
        if sa[i] > 0 and stype[j]:
            bkt[s[j]] -= 1
            sa[bkt[s[j]]] = j


@njit(cache=True)
def _is_lms(stype, i):
    return i > 0 and stype[i] and not stype[i - 1]


@njit(cache=True)
def _reduce(s, k):
    """Sort and name LMS substrings; returns (sa, stype, n1, names, reduced)."""
    n = s.shape[0]
    stype = _classify(s)
    sa = np.full(n, -1, np.int64)
    bkt = _buckets(s, k, True)
    for i in range(1, n):
        if _is_lms(stype, i):
            bkt[s[i]] -= 1
            sa[bkt[s[i]]] = i
    _induce(s, sa, stype, k)

    n1 = 0
    for i in range(n):
        if _is_lms(stype, sa[i]):
            sa[n1] = sa[i]
            n1 += 1
    for i in range(n1, n):
        sa[i] = -1
    name = 0
    prev = -1
    for i in range(n1):
        pos = sa[i]
        diff = prev < 0
        d = 0
        while not diff:
            if s[pos + d] != s[prev + d] or stype[pos + d] != stype[prev + d]:
                diff = True
            elif d > 0 and _is_lms(stype, pos + d):
                break
            d += 1
        if diff:
            name += 1
            prev = pos
        sa[n1 + pos // 2] = name - 1
    j = n - 1
    for i in range(n - 1, n1 - 1, -1):
        if sa[i] >= 0:
            sa[j] = sa[i]
            j -= 1
    reduced = sa[n - n1:].copy()
    return sa, stype, n1, name, reduced


@njit(cache=True)
def _expand(s, k, sa, stype, sa1):
    n = s.shape[0]
    n1 = sa1.shape[0]
    lms = np.empty(n1, np.int64)
    j = 0
    for i in range(1, n):
        if _is_lms(stype, i):
            lms[j] = i
            j += 1
    for i in range(n1):
        sa1[i] = lms[sa1[i]]
    sa[:] = -1
    bkt = _buckets(s, k, True)
    for i in range(n1 - 1, -1, -1):
        p = sa1[i]
        bkt[s[p]] -= 1
        sa[bkt[s[p]]] = p
    _induce(s, sa, stype, k)


def _sais(s: np.ndarray, k: int) -> np.ndarray:
    if s.shape[0] == 1:
        return np.zeros(1, np.int64)
    sa, stype, n1, names, reduced = _reduce(s, k)
    if names < n1:
        sa1 = _sais(reduced, names)
    else:
        sa1 = np.empty(n1, np.int64)
        sa1[reduced] = np.arange(n1, dtype=np.int64)
    _expand(s, k, sa, stype, sa1)
    return sa


def build_suffix_array(t: Text) -> np.ndarray:
    """Suffix array of ``t`` by induced sorting, as uint32."""
    return _sais(t.data.astype(np.int64), 256).astype(INDEX_DTYPE)


def naive_suffix_array(t: Text) -> np.ndarray:
    """Sort all suffixes directly. Quadratic; only for small texts."""
    raw = t.data.tobytes()
    return np.array(sorted(range(len(raw)), key=lambda i: raw[i:]), dtype=INDEX_DTYPE)


@njit(cache=True)
def _invert(sa, isa):
    for i in range(sa.shape[0]):
        isa[sa[i]] = i


def invert(sa: np.ndarray) -> np.ndarray:
    isa = np.empty(sa.shape[0], dtype=INDEX_DTYPE)
    _invert(sa, isa)
    return isa


@njit(cache=True)
def _adjacent_increasing(text, sa):
    n = sa.shape[0]
    for i in range(1, n):
        a = sa[i - 1]
        b = sa[i]
        # the unique sentinel guarantees a mismatch before either suffix ends
        while text[a] == text[b]:
            a += 1
            b += 1
        if text[a] > text[b]:
            return False
    return True


def verify_suffix_array(t: Text, sa) -> bool:
    sa = np.asarray(sa)
    n = t.n
    if sa.shape != (n,) or not np.issubdtype(sa.dtype, np.integer):
        return False
    seen = np.zeros(n, dtype=bool)
    if sa.min() < 0 or sa.max() >= n:
        return False
    seen[sa] = True
    if not seen.all():
        return False
    return bool(_adjacent_increasing(t.data, sa.astype(np.int64)))
