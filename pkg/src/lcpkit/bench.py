"""Running and timing the construction algorithms.

CSV schema (one row per algorithm, stable column order):

    algo, n, seconds, comparisons, random_accesses, peak_bytes, lcp_sha256

``seconds`` is the median wall time over the repeats and covers the LCP
construction only; SA and BWT come from cache. ``peak_bytes`` is the peak of
the space ledger, ``lcp_sha256`` hashes the serialized LCP payload.
"""
import csv
import hashlib
import os
import statistics
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .baseline import lcp_bruteforce, lcp_kasai, lcp_phi
from .bwt import build_bwt
from .counters import Counters
from .formats import BWT, SA, read_array, stream_length, write_bwt, write_sa
from .go import lcp_go, lcp_go2
from .hybrid import DEFAULT_M, lcp_hybrid
from .ledger import SpaceLedger
from .sarray import build_suffix_array
from .textcore import Text, load_text

ALGOS = ("brute", "kasai", "phi", "go", "go2", "hybrid")


def run_algo(algo: str, t: Text, sa, bwt, *, m=DEFAULT_M, queue_buf=65536, tmp_dir=None,
             out=None, counters=None, ledger=None):
    """Build the LCP array with one algorithm.

    ``sa``/``bwt`` may be arrays or SA/BWT file paths; the streaming
    algorithms (go2, hybrid) read files sequentially, the others load them.
    Returns the n+1 LCP array, or None when go2/hybrid wrote to ``out``.
    """
    if algo in ("go2", "hybrid"):
        if algo == "go2":
            return lcp_go2(t, sa, bwt, queue_buf=queue_buf, tmp_dir=tmp_dir, out=out,
                           counters=counters, ledger=ledger)
        return lcp_hybrid(t, sa, m, bwt=bwt, tmp_dir=tmp_dir, out=out,
                          counters=counters, ledger=ledger)
    if not isinstance(sa, np.ndarray):
        sa = read_array(sa, SA)
    if algo == "brute":
        return lcp_bruteforce(t, sa, counters)
    if algo == "kasai":
        return lcp_kasai(t, sa, counters=counters, ledger=ledger)
    if algo == "phi":
        return lcp_phi(t, sa, counters=counters, ledger=ledger)
    if algo == "go":
        if not isinstance(bwt, np.ndarray):
            bwt = read_array(bwt, BWT)
        return lcp_go(t, sa, bwt, counters=counters, ledger=ledger)
    raise ValueError(f"unknown algorithm {algo!r}")


def lcp_digest(lcp) -> str:
    return hashlib.sha256(np.asarray(lcp)[:-1].astype("<i4").tobytes()).hexdigest()


@dataclass
class BenchRow:
    algo: str
    n: int
    seconds: float
    comparisons: int
    random_accesses: int
    peak_bytes: int
    lcp_sha256: str


_warm = set()


def _warm_up(algo, m, queue_buf, tmp_dir):
    # compile the numba kernels outside the timed region
    if algo in _warm:
        return
    t = load_text(b"abracadabra")
    sa = build_suffix_array(t)
    run_algo(algo, t, sa, build_bwt(t, sa), m=m, queue_buf=queue_buf, tmp_dir=tmp_dir)
    _warm.add(algo)


def bench_one(algo, t: Text, sa, bwt, repeat=1, *, m=DEFAULT_M, queue_buf=65536,
              tmp_dir=None) -> BenchRow:
    _warm_up(algo, m, queue_buf, tmp_dir)
    times = []
    for _ in range(max(repeat, 1)):
        counters = Counters()
        ledger = SpaceLedger()
        start = time.perf_counter()
        lcp = run_algo(algo, t, sa, bwt, m=m, queue_buf=queue_buf, tmp_dir=tmp_dir,
                       counters=counters, ledger=ledger)
        times.append(time.perf_counter() - start)
    return BenchRow(algo, t.n, statistics.median(times), counters.comparisons,
                    counters.random_accesses, ledger.peak, lcp_digest(lcp))


def _bench_job(args):
    algo, text_path, sa_path, bwt_path, repeat, m, queue_buf, tmp_dir = args
    with open(text_path, "rb") as f:
        t = load_text(f.read())
    if algo not in ("go2", "hybrid"):
        # in-memory algorithms get their inputs loaded before the clock starts
        sa_path, bwt_path = read_array(sa_path, SA), read_array(bwt_path, BWT)
    with tempfile.TemporaryDirectory(dir=tmp_dir) as private:
        return bench_one(algo, t, sa_path, bwt_path, repeat, m=m, queue_buf=queue_buf,
                         tmp_dir=private)


def bench_file(text_path, sa_path, bwt_path, algos=ALGOS, repeat=1, *, m=DEFAULT_M,
               queue_buf=65536, tmp_dir=None, jobs=1) -> list[BenchRow]:
    jobs_args = [(a, text_path, sa_path, bwt_path, repeat, m, queue_buf, tmp_dir) for a in algos]
    if jobs <= 1:
        return [_bench_job(a) for a in jobs_args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_bench_job, jobs_args))


def write_rows(rows, f):
    w = csv.writer(f)
    w.writerow([fl.name for fl in fields(BenchRow)])
    for r in rows:
        w.writerow([f"{v:.6f}" if isinstance(v, float) else v for v in astuple(r)])


def ensure_sidecars(text_path, t: Text | None = None):
    """Build ``<input>.sa`` and ``<input>.bwt`` unless fresh copies exist."""
    sa_path = f"{text_path}.sa"
    bwt_path = f"{text_path}.bwt"
    if _fresh(sa_path, text_path) and _fresh(bwt_path, text_path):
        return sa_path, bwt_path
    if t is None:
        with open(text_path, "rb") as f:
            t = load_text(f.read())
    sa = build_suffix_array(t)
    write_sa(sa_path, sa)
    write_bwt(bwt_path, build_bwt(t, sa))
    return sa_path, bwt_path


def _fresh(path, source) -> bool:
    if not os.path.exists(path):
        return False
    if os.path.getmtime(path) < os.path.getmtime(source):
        return False
    n = os.path.getsize(source) + 1
    kind = SA if path.endswith(".sa") else BWT
    try:
        return stream_length(path, kind) == n
    except ValueError:
        return False
