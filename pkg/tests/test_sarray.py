import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcpkit.sarray import build_suffix_array, invert, naive_suffix_array, verify_suffix_array
from lcpkit.textcore import load_text

from conftest import BANANA_ISA, BANANA_SA, WORKED, WORKED_SA, random_text


def test_worked_suffix_array():
    assert build_suffix_array(load_text(WORKED)).tolist() == WORKED_SA


def test_single_sentinel():
    assert build_suffix_array(load_text(b"")).tolist() == [0]


def test_banana():
    assert build_suffix_array(load_text(b"banana")).tolist() == BANANA_SA


def test_invert_examples():
    isa = invert(np.array(WORKED_SA))
    assert (isa[18], isa[2], isa[0]) == (0, 1, 6)
    assert invert(np.array([0])).tolist() == [0]
    assert invert(np.array(BANANA_SA)).tolist() == BANANA_ISA


def test_verify_accepts_and_rejects():
    t = load_text(WORKED)
    assert verify_suffix_array(t, np.array(WORKED_SA))
    assert not verify_suffix_array(t, np.arange(19))
    b = load_text(b"banana")
    assert verify_suffix_array(b, np.array(BANANA_SA))
    assert not verify_suffix_array(b, np.array([6, 5, 3, 1, 0, 2, 4]))


def test_verify_rejects_non_permutations():
    t = load_text(b"banana")
    assert not verify_suffix_array(t, np.array([6, 5, 3, 1, 0, 4]))
    assert not verify_suffix_array(t, np.array([6, 5, 3, 1, 0, 4, 4]))
    assert not verify_suffix_array(t, np.array([6, 5, 3, 1, 0, 4, 7]))


@pytest.mark.parametrize("sigma", [2, 4, 26, 255])
def test_matches_naive_sort(sigma):
    rng = np.random.default_rng(sigma)
    for _ in range(20):
        n = int(rng.integers(0, 2000))
        t = load_text(random_text(rng, n, sigma))
        sa = build_suffix_array(t)
        assert np.array_equal(sa, naive_suffix_array(t))
        assert sa[0] == t.n - 1


@pytest.mark.parametrize("raw", [b"a" * 1000, b"ab" * 700, b"abc" * 333 + b"ab", b"\xff" * 64])
def test_repetitive_inputs(raw):
    t = load_text(raw)
    assert np.array_equal(build_suffix_array(t), naive_suffix_array(t))


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=200).map(lambda b: b.replace(b"\x00", b"\x01")))
def test_property_sorted_permutation(raw):
    t = load_text(raw)
    sa = build_suffix_array(t)
    assert verify_suffix_array(t, sa)
    assert np.array_equal(sa, naive_suffix_array(t))
