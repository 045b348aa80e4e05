"""On-disk array formats and sequential chunk streams.

All integers are little-endian. Every file starts with an 8-byte magic
followed by the element count n as uint64, except the byte-LCP file which
carries the threshold byte m between magic and n.

    SA      LCPFSA01  n  n x uint32
    BWT     LCPFBW01  n  n x uint8 (sentinel stored as 0x00)
    LCP     LCPFLC01  n  n x int32  (lcp[0..n-1]; lcp[n] = -1 is implicit)
    ByteLcp LCPFL801  m  n  n x uint8
"""
import os
import struct
from dataclasses import dataclass

import numpy as np

from .errors import FormatError
from .textcore import lcp_dtype

DEFAULT_CHUNK = 1 << 16


@dataclass(frozen=True)
class Kind:
    magic: bytes
    dtype: str
    has_m: bool = False


SA = Kind(b"LCPFSA01", "<u4")
BWT = Kind(b"LCPFBW01", "u1")
LCP = Kind(b"LCPFLC01", "<i4")
LCP8 = Kind(b"LCPFL801", "u1", has_m=True)


def _header(kind: Kind, n: int, m: int | None = None) -> bytes:
    head = kind.magic
    if kind.has_m:
        head += struct.pack("<B", m)
    return head + struct.pack("<Q", n)


def read_header(f, kind: Kind):
    magic = f.read(8)
    if magic != kind.magic:
        raise FormatError(f"bad magic {magic!r}, expected {kind.magic!r}")
    m = None
    if kind.has_m:
        (m,) = struct.unpack("<B", f.read(1))
    raw = f.read(8)
    if len(raw) != 8:
        raise FormatError("truncated header")
    (n,) = struct.unpack("<Q", raw)
    return n, m


def header_size(kind: Kind) -> int:
    return 16 + (1 if kind.has_m else 0)


def write_array(path, kind: Kind, values, m: int | None = None):
    values = np.asarray(values)
    with open(path, "wb") as f:
        f.write(_header(kind, values.shape[0], m))
        f.write(_checked_cast(values, kind).tobytes())


def read_array(path, kind: Kind):
    """Returns the payload in its stored width (and m for byte-LCP files)."""
    with open(path, "rb") as f:
        n, m = read_header(f, kind)
        data = np.fromfile(f, dtype=kind.dtype, count=n)
    if data.shape[0] != n:
        raise FormatError(f"{path}: expected {n} entries, found {data.shape[0]}")
    data = data.astype(np.dtype(kind.dtype).newbyteorder("="), copy=False)
    return (data, m) if kind.has_m else data


def _checked_cast(values, kind: Kind):
    info = np.iinfo(np.dtype(kind.dtype))
    if values.size and (values.min() < info.min or values.max() > info.max):
        raise FormatError(f"values do not fit {kind.dtype}")
    return values.astype(kind.dtype, copy=False)


def write_sa(path, sa):
    write_array(path, SA, sa)


def read_sa(path):
    return read_array(path, SA)


def write_bwt(path, bwt):
    write_array(path, BWT, bwt)


def read_bwt(path):
    return read_array(path, BWT)


def write_lcp(path, lcp):
    """Write an LCP array of length n+1; the trailing -1 is not stored."""
    lcp = np.asarray(lcp)
    write_array(path, LCP, lcp[:-1])


def read_lcp(path):
    body = read_array(path, LCP)
    return np.append(body, np.int32(-1))


def write_lcp8(path, vals, m: int):
    write_array(path, LCP8, vals, m)


def read_lcp8(path):
    return read_array(path, LCP8)


def stream_length(source, kind: Kind) -> int:
    if isinstance(source, np.ndarray):
        return int(source.shape[0])
    with open(source, "rb") as f:
        return read_header(f, kind)[0]


def iter_chunks(source, kind: Kind, chunk: int = DEFAULT_CHUNK, ledger=None, name="stream"):
    """Yield consecutive pieces of an array or a serialized file.

    In-memory arrays yield views. Files are read one chunk at a time, which is
    the only buffer charged to ``ledger``.
    """
    if isinstance(source, np.ndarray):
        for lo in range(0, source.shape[0], chunk):
            yield source[lo:lo + chunk]
        return
    native = np.dtype(kind.dtype).newbyteorder("=")
    if ledger is not None:
        ledger.hold(name, chunk * native.itemsize)
    try:
        with open(source, "rb") as f:
            n, _ = read_header(f, kind)
            left = n
            while left:
                part = np.fromfile(f, dtype=kind.dtype, count=min(chunk, left))
                if part.shape[0] == 0:
                    raise FormatError(f"{source}: truncated payload")
                left -= part.shape[0]
                yield part.astype(native, copy=False)
    finally:
        if ledger is not None:
            ledger.release(name)


class LcpWriter:
    """Streams lcp[0..n-1] to an LCP file chunk by chunk."""

    def __init__(self, path, n: int):
        self.path = path
        self.n = n
        self.written = 0
        self._f = open(path, "wb")
        self._f.write(_header(LCP, n))

    def write(self, values):
        values = np.asarray(values)
        self._f.write(_checked_cast(values, LCP).tobytes())
        self.written += values.shape[0]

    def close(self):
        self._f.close()
        if self.written != self.n:
            os.unlink(self.path)
            raise FormatError(f"wrote {self.written} of {self.n} lcp entries")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.close()
        else:
            self._f.close()


class LcpCollector:
    """In-memory counterpart of :class:`LcpWriter` producing an n+1 array."""

    def __init__(self, n: int):
        self.lcp = np.empty(n + 1, dtype=lcp_dtype(n))
        self.lcp[n] = -1
        self.written = 0

    def write(self, values):
        k = values.shape[0]
        self.lcp[self.written:self.written + k] = values
        self.written += k

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        pass


def open_sink(out, n: int):
    return LcpCollector(n) if out is None else LcpWriter(out, n)
