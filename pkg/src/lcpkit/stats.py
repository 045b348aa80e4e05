"""Corpus statistics that drive the relative speed of the constructions."""
import csv
from dataclasses import dataclass, field

import numpy as np

from .baseline import lcp_kasai, phi_plcp
from .bwt import build_bwt, bwt_run_count
from .sarray import build_suffix_array
from .textcore import Text, sigma_effective


@dataclass
class CorpusStats:
    n: int
    sigma_effective: int
    bwt_runs: int
    irreducible_count: int
    max_lcp: int
    mean_lcp: float
    fraction_above: dict = field(default_factory=dict)

    def rows(self):
        yield "n", self.n
        yield "sigma_effective", self.sigma_effective
        yield "bwt_runs", self.bwt_runs
        yield "irreducible_count", self.irreducible_count
        yield "max_lcp", self.max_lcp
        yield "mean_lcp", f"{self.mean_lcp:.6g}"
        for m, frac in sorted(self.fraction_above.items()):
            yield f"fraction_lcp_above_{m}", f"{frac:.6g}"

    def format(self) -> str:
        rows = list(self.rows())
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)

    def write_csv(self, path):
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["statistic", "value"])
            w.writerows(self.rows())


def irreducible_count(t: Text, sa: np.ndarray) -> int:
    """Suffix-array positions whose PLCP entry is not reducible.

    Counted from the text and Phi: PLCP[j] is reducible when S[j-1] equals
    S[Phi[j]-1]. Position 0 (the sentinel suffix) has no predecessor and
    counts as irreducible.
    """
    if t.n <= 1:
        return t.n
    phi, _ = phi_plcp(t, sa)
    j = sa[1:].astype(np.int64)
    # j - 1 = -1 wraps to the sentinel, matching the BWT definition
    reducible = t.data[j - 1] == t.data[phi[j].astype(np.int64) - 1]
    return 1 + int(np.count_nonzero(~reducible))


def corpus_stats(t: Text, m_list=(254,), sa=None, lcp=None) -> CorpusStats:
    if sa is None:
        sa = build_suffix_array(t)
    if lcp is None:
        lcp = lcp_kasai(t, sa)
    interior = lcp[1:t.n]
    fractions = {}
    for m in m_list:
        fractions[m] = float(np.count_nonzero(interior > m) / interior.shape[0]) if interior.size else 0.0
    return CorpusStats(
        n=t.n,
        sigma_effective=sigma_effective(t),
        bwt_runs=bwt_run_count(build_bwt(t, sa)),
        irreducible_count=irreducible_count(t, sa),
        max_lcp=int(interior.max()) if interior.size else -1,
        mean_lcp=float(interior.mean()) if interior.size else 0.0,
        fraction_above=fractions,
    )
