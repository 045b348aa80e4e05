import numpy as np
import pytest

from lcpkit.errors import FormatError
from lcpkit.formats import (BWT, LCP, SA, LcpWriter, iter_chunks, read_bwt, read_lcp, read_lcp8,
                            read_sa, stream_length, write_bwt, write_lcp, write_lcp8, write_sa)
from lcpkit.ledger import SpaceLedger

from conftest import WORKED_BWT, WORKED_LCP, WORKED_SA


def test_sa_layout(tmp_path):
    p = tmp_path / "a.sa"
    write_sa(p, np.array(WORKED_SA))
    raw = p.read_bytes()
    assert raw[:8] == b"LCPFSA01"
    assert int.from_bytes(raw[8:16], "little") == 19
    assert np.frombuffer(raw[16:], "<u4").tolist() == WORKED_SA
    assert read_sa(p).tolist() == WORKED_SA


def test_bwt_layout(tmp_path):
    p = tmp_path / "a.bwt"
    write_bwt(p, np.frombuffer(WORKED_BWT, np.uint8))
    raw = p.read_bytes()
    assert raw[:16] == b"LCPFBW01" + (19).to_bytes(8, "little")
    assert raw[16:] == WORKED_BWT
    assert bytes(read_bwt(p)) == WORKED_BWT


def test_lcp_layout_drops_closing_boundary(tmp_path):
    p = tmp_path / "a.lcp"
    write_lcp(p, np.array(WORKED_LCP))
    raw = p.read_bytes()
    assert raw[:16] == b"LCPFLC01" + (19).to_bytes(8, "little")
    assert np.frombuffer(raw[16:], "<i4").tolist() == WORKED_LCP[:19]
    assert read_lcp(p).tolist() == WORKED_LCP


def test_byte_lcp_layout(tmp_path):
    p = tmp_path / "a.lcp8"
    vals = np.array([0, 0, 1, 3, 2], dtype=np.uint8)
    write_lcp8(p, vals, 2)
    raw = p.read_bytes()
    assert raw[:9] == b"LCPFL801\x02"
    assert int.from_bytes(raw[9:17], "little") == 5
    got, m = read_lcp8(p)
    assert m == 2 and got.tolist() == vals.tolist()


def test_bad_magic_and_truncation(tmp_path):
    p = tmp_path / "a.sa"
    write_sa(p, np.array(WORKED_SA))
    with pytest.raises(FormatError):
        read_bwt(p)
    p.write_bytes(p.read_bytes()[:-8])
    with pytest.raises(FormatError):
        list(iter_chunks(str(p), SA, chunk=4))
    (tmp_path / "b").write_bytes(b"LCPFSA01\x01")
    with pytest.raises(FormatError):
        read_sa(tmp_path / "b")


def test_values_out_of_range(tmp_path):
    with pytest.raises(FormatError):
        write_sa(tmp_path / "a.sa", np.array([-1, 0]))
    with pytest.raises(FormatError):
        write_lcp(tmp_path / "a.lcp", np.array([-1, 2**31, -1]))


def test_chunks_from_file_and_array(tmp_path):
    sa = np.array(WORKED_SA)
    write_sa(tmp_path / "a.sa", sa)
    ledger = SpaceLedger()
    parts = list(iter_chunks(str(tmp_path / "a.sa"), SA, chunk=5, ledger=ledger, name="sa"))
    assert [len(p) for p in parts] == [5, 5, 5, 4]
    assert np.concatenate(parts).tolist() == WORKED_SA
    assert ledger.peak == 5 * 4 and ledger.current == 0
    assert parts[0].dtype == np.uint32
    assert [len(p) for p in iter_chunks(sa, SA, chunk=7)] == [7, 7, 5]
    assert stream_length(str(tmp_path / "a.sa"), SA) == 19
    assert stream_length(sa, BWT) == 19


def test_writer_checks_count(tmp_path):
    p = tmp_path / "a.lcp"
    with LcpWriter(p, 3) as w:
        w.write(np.array([-1, 0]))
        w.write(np.array([2]))
    assert read_lcp(p).tolist() == [-1, 0, 2, -1]
    with pytest.raises(FormatError):
        with LcpWriter(p, 3) as w:
            w.write(np.array([-1]))
    assert not p.exists()


def test_stream_length_checks_magic(tmp_path):
    p = tmp_path / "bad.lcp"
    p.write_bytes(b"XXXXXXXX" + bytes(8))
    with pytest.raises(FormatError):
        stream_length(str(p), LCP)
