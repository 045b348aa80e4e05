import numpy as np
import pytest

from lcpkit.baseline import lcp_bruteforce, lcp_kasai, lcp_phi, phi_plcp
from lcpkit.counters import Counters
from lcpkit.sarray import invert
from lcpkit.textcore import load_text

from conftest import BANANA_LCP, WORKED_LCP, prepared, random_text

BASELINES = [lcp_bruteforce, lcp_kasai, lcp_phi]


@pytest.mark.parametrize("build", BASELINES)
def test_worked(build, worked):
    t, sa, _ = worked
    assert build(t, sa).tolist() == WORKED_LCP


@pytest.mark.parametrize("build", BASELINES)
def test_banana(build, banana):
    t, sa, _ = banana
    assert build(t, sa).tolist() == BANANA_LCP


@pytest.mark.parametrize("build", BASELINES)
def test_sentinel_only(build):
    t, sa, _ = prepared(b"")
    assert build(t, sa).tolist() == [-1, -1]


def test_kasai_accepts_isa(worked):
    t, sa, _ = worked
    assert lcp_kasai(t, sa, invert(sa)).tolist() == WORKED_LCP


def test_phi_intermediates(worked):
    t, sa, _ = worked
    phi, plcp = phi_plcp(t, sa)
    assert phi[12] == 3 and plcp[12] == 5
    assert phi[sa[0]] == t.n - 1 and plcp[sa[0]] == 0
    lcp = np.array(WORKED_LCP)
    assert np.array_equal(plcp[sa[1:]], lcp[1:19])


@pytest.mark.parametrize("sigma", [2, 4, 26, 255])
def test_baselines_agree(sigma):
    rng = np.random.default_rng(7 * sigma)
    for _ in range(15):
        t, sa, _ = prepared(random_text(rng, int(rng.integers(1, 3000)), sigma))
        ref = lcp_bruteforce(t, sa)
        c = Counters()
        assert np.array_equal(lcp_kasai(t, sa, counters=c), ref)
        assert c.comparisons <= 2 * t.n
        assert np.array_equal(lcp_phi(t, sa), ref)
        inner = ref[1:t.n]
        assert np.all(inner >= 0) and np.all(inner <= t.n - 2)
        assert np.all(inner <= t.n - 1 - np.maximum(sa[1:], sa[:-1]).astype(np.int64))


def test_kasai_comparison_bound_on_repeats():
    for raw in (b"a" * 5000, b"ab" * 3000, b"abcabd" * 500):
        t, sa, _ = prepared(raw)
        c = Counters()
        lcp_kasai(t, sa, counters=c)
        assert c.comparisons <= 2 * t.n


def test_counters_brute_counts_mismatches():
    t = load_text(b"ab")
    sa = np.array([2, 0, 1])
    c = Counters()
    lcp_bruteforce(t, sa, counters=c)
    # "$" vs "ab$" and "ab$" vs "b$": one mismatching comparison each
    assert c.comparisons == 2


def test_array_widths(worked):
    t, sa, _ = worked
    assert sa.dtype == np.uint32
    assert invert(sa).dtype == np.uint32
    for build in BASELINES:
        assert build(t, sa).dtype == np.int32


def test_prefetch_hint_is_harmless():
    from numba import njit
    from lcpkit.prefetch import prefetch

    @njit
    def touch(a):
        prefetch(a, 0)
        prefetch(a, a.shape[0] + 1000)
        return a.sum()

    assert touch(np.arange(10)) == 45
