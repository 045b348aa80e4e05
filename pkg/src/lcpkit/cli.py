import sys
import time

import click
import numpy as np

from .baseline import lcp_bruteforce, lcp_kasai
from .bench import ALGOS, bench_file, ensure_sidecars, run_algo, write_rows
from .counters import Counters
from .errors import LcpKitError
from .formats import read_lcp, read_sa, write_lcp
from .hybrid import DEFAULT_M
from .ledger import SpaceLedger
from .stats import corpus_stats
from .textcore import load_text

# above this size verify trusts Kasai instead of the quadratic oracle
BRUTE_VERIFY_LIMIT = 1 << 14


def _load(path):
    with open(path, "rb") as f:
        return load_text(f.read())


@click.group()
def main():
    """Lightweight LCP-array construction toolkit."""


@main.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(ALGOS), default="hybrid", show_default=True)
@click.option("--m", "m", type=click.IntRange(1, 254), default=DEFAULT_M, show_default=True,
              help="Phase-1 threshold (hybrid only).")
@click.option("--queue-buf", type=click.IntRange(32), default=65536, show_default=True,
              help="Bytes per character queue (go2 only).")
@click.option("--tmp", "tmp_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for queue spill files and the byte LCP array.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="LCP output file [default: INPUT.lcp].")
def build(input, algo, m, queue_buf, tmp_dir, out):
    """Build the LCP array of INPUT (SA/BWT are cached next to it)."""
    out = out or f"{input}.lcp"
    try:
        t = _load(input)
        sa_path, bwt_path = ensure_sidecars(input, t)
        ledger = SpaceLedger()
        counters = Counters()
        start = time.perf_counter()
        streaming = algo in ("go2", "hybrid")
        lcp = run_algo(algo, t, sa_path, bwt_path, m=m, queue_buf=queue_buf, tmp_dir=tmp_dir,
                       out=out if streaming else None, counters=counters, ledger=ledger)
        elapsed = time.perf_counter() - start
        if not streaming:
            write_lcp(out, lcp)
    except (OSError, LcpKitError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    click.echo(f"algo={algo} n={t.n} seconds={elapsed:.3f} comparisons={counters.comparisons}")
    for key, value in ledger.report().items():
        click.echo(f"resident {key} = {value} bytes ({value / max(t.n, 1):.3f} per char)")
    click.echo(f"wrote {out}")


@main.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.argument("lcp_file", type=click.Path(exists=True, dir_okay=False))
def verify(input, lcp_file):
    """Check LCP_FILE against a fresh reference construction for INPUT."""
    try:
        t = _load(input)
        got = read_lcp(lcp_file)
        sa = read_sa(ensure_sidecars(input, t)[0])
    except (OSError, LcpKitError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    if got.shape[0] != t.n + 1:
        click.echo(f"length mismatch: file has n={got.shape[0] - 1}, text has n={t.n}", err=True)
        sys.exit(1)
    if t.n <= BRUTE_VERIFY_LIMIT:
        ref, how = lcp_bruteforce(t, sa), "brute force"
    else:
        ref, how = lcp_kasai(t, sa), "kasai"
    diff = np.flatnonzero(ref != got)
    if diff.size:
        i = int(diff[0])
        click.echo(f"mismatch at index {i}: expected {ref[i]}, found {got[i]} "
                   f"({diff.size} differing entries, reference: {how})", err=True)
        sys.exit(1)
    click.echo(f"ok: {t.n} entries match ({how})")


@main.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--m", "m_list", type=int, multiple=True, default=(DEFAULT_M,), show_default=True,
              help="Threshold for the fraction of large lcp values; repeatable.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None)
def stats(input, m_list, csv_path):
    """Report corpus statistics for INPUT."""
    try:
        t = _load(input)
        sa = read_sa(ensure_sidecars(input, t)[0])
    except (OSError, LcpKitError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    report = corpus_stats(t, m_list, sa=sa)
    click.echo(report.format())
    if csv_path:
        report.write_csv(csv_path)


@main.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", "algos", type=click.Choice(ALGOS), multiple=True, default=ALGOS,
              show_default=True)
@click.option("--repeat", type=click.IntRange(1), default=3, show_default=True)
@click.option("--m", "m", type=click.IntRange(1, 254), default=DEFAULT_M, show_default=True)
@click.option("--queue-buf", type=click.IntRange(32), default=65536, show_default=True)
@click.option("--tmp", "tmp_dir", type=click.Path(file_okay=False), default=None)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write rows here instead of stdout.")
@click.option("--jobs", type=click.IntRange(1), default=1, show_default=True,
              help="Run algorithms in parallel worker processes.")
def bench(input, algos, repeat, m, queue_buf, tmp_dir, csv_path, jobs):
    """Time the LCP constructions on INPUT and emit CSV."""
    try:
        sa_path, bwt_path = ensure_sidecars(input)
        rows = bench_file(input, sa_path, bwt_path, algos, repeat, m=m, queue_buf=queue_buf,
                          tmp_dir=tmp_dir, jobs=jobs)
    except (OSError, LcpKitError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    if csv_path:
        with open(csv_path, "w", newline="") as f:
            write_rows(rows, f)
    else:
        write_rows(rows, sys.stdout)


if __name__ == "__main__":
    main()
