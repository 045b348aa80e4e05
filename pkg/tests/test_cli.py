import csv
import io

import numpy as np
import pytest
from click.testing import CliRunner

from lcpkit.bench import ALGOS
from lcpkit.cli import main
from lcpkit.formats import read_lcp, write_lcp

from conftest import BANANA_LCP, WORKED, WORKED_LCP


@pytest.fixture
def runner():
    return CliRunner()


def _text(tmp_path, raw, name="in.txt"):
    p = tmp_path / name
    p.write_bytes(raw)
    return str(p)


@pytest.mark.parametrize("algo", ALGOS)
def test_build_then_verify(runner, tmp_path, algo):
    src = _text(tmp_path, WORKED)
    res = runner.invoke(main, ["build", src, "--algo", algo, "--m", "2", "--queue-buf", "32",
                               "--tmp", str(tmp_path)])
    assert res.exit_code == 0, res.output
    assert "resident peak" in res.output
    assert read_lcp(src + ".lcp").tolist() == WORKED_LCP
    res = runner.invoke(main, ["verify", src, src + ".lcp"])
    assert res.exit_code == 0 and "ok" in res.output


def test_build_go2_empty_input(runner, tmp_path):
    src = _text(tmp_path, b"")
    out = str(tmp_path / "e.lcp")
    res = runner.invoke(main, ["build", src, "--algo", "go2", "--out", out])
    assert res.exit_code == 0, res.output
    assert read_lcp(out).tolist() == [-1, -1]


def test_kasai_and_hybrid_files_identical(runner, tmp_path):
    rng = np.random.default_rng(0)
    src = _text(tmp_path, bytes(rng.choice(np.frombuffer(b"ACGT", np.uint8), 1 << 20)))
    for algo in ("kasai", "hybrid"):
        res = runner.invoke(main, ["build", src, "--algo", algo, "--out", f"{src}.{algo}"])
        assert res.exit_code == 0, res.output
    with open(f"{src}.kasai", "rb") as a, open(f"{src}.hybrid", "rb") as b:
        assert a.read() == b.read()


def test_verify_reports_first_bad_index(runner, tmp_path):
    src = _text(tmp_path, WORKED)
    bad = list(WORKED_LCP)
    bad[4] = 4
    write_lcp(tmp_path / "bad.lcp", np.array(bad))
    res = runner.invoke(main, ["verify", src, str(tmp_path / "bad.lcp")])
    assert res.exit_code != 0
    assert "index 4" in res.output


def test_verify_banana(runner, tmp_path):
    src = _text(tmp_path, b"banana")
    write_lcp(tmp_path / "b.lcp", np.array(BANANA_LCP))
    assert runner.invoke(main, ["verify", src, str(tmp_path / "b.lcp")]).exit_code == 0


def test_verify_length_mismatch(runner, tmp_path):
    src = _text(tmp_path, b"banana")
    write_lcp(tmp_path / "f.lcp", np.array(WORKED_LCP))
    res = runner.invoke(main, ["verify", src, str(tmp_path / "f.lcp")])
    assert res.exit_code == 1 and "length mismatch" in res.output


def test_build_rejects_embedded_zero(runner, tmp_path):
    src = _text(tmp_path, b"ab\x00c")
    res = runner.invoke(main, ["build", src])
    assert res.exit_code == 1 and "error" in res.output


def test_bad_flags(runner, tmp_path):
    src = _text(tmp_path, WORKED)
    assert runner.invoke(main, ["build", src, "--m", "255"]).exit_code != 0
    assert runner.invoke(main, ["build", src, "--queue-buf", "16"]).exit_code != 0
    assert runner.invoke(main, ["build", src, "--algo", "nope"]).exit_code != 0


def test_stats(runner, tmp_path):
    src = _text(tmp_path, WORKED)
    out = str(tmp_path / "s.csv")
    res = runner.invoke(main, ["stats", src, "--m", "2", "--csv", out])
    assert res.exit_code == 0
    rows = dict(csv.reader(open(out)))
    assert rows["n"] == "19" and rows["bwt_runs"] == "14" and rows["irreducible_count"] == "14"
    assert float(rows["fraction_lcp_above_2"]) == pytest.approx(3 / 18, rel=1e-5)


def test_bench_rows_agree(runner, tmp_path):
    src = _text(tmp_path, WORKED)
    res = runner.invoke(main, ["bench", src, "--repeat", "1", "--tmp", str(tmp_path)])
    assert res.exit_code == 0, res.output
    rows = list(csv.DictReader(io.StringIO(res.output)))
    assert [r["algo"] for r in rows] == list(ALGOS)
    assert len({r["lcp_sha256"] for r in rows}) == 1
    assert list(rows[0]) == ["algo", "n", "seconds", "comparisons", "random_accesses",
                             "peak_bytes", "lcp_sha256"]


def test_bench_parallel_jobs_to_csv(runner, tmp_path):
    src = _text(tmp_path, b"ab" * 2000)
    out = str(tmp_path / "b.csv")
    res = runner.invoke(main, ["bench", src, "--algo", "go", "--algo", "hybrid", "--jobs", "2",
                               "--csv", out])
    assert res.exit_code == 0, res.output
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 2 and rows[0]["lcp_sha256"] == rows[1]["lcp_sha256"]
    # the quadratic case shows up in go's counter
    assert int(rows[0]["comparisons"]) > 5 * int(rows[1]["comparisons"])


def test_go_comparisons_superlinear_vs_random(tmp_path):
    from lcpkit.bench import bench_one
    from conftest import prepared, random_text
    n = 100_000
    hard = bench_one("go", *prepared(b"ab" * (n // 2)))
    easy = bench_one("go", *prepared(random_text(np.random.default_rng(1), n, 2)))
    assert hard.comparisons > 50 * easy.comparisons
