import numpy as np
import pytest

from lcpkit.bwt import build_bwt
from lcpkit.sarray import build_suffix_array
from lcpkit.textcore import load_text

WORKED = b"el_anele_lepanelen"
WORKED_SA = [18, 2, 8, 3, 12, 7, 0, 5, 14, 16, 10, 1, 6, 15, 9, 17, 4, 13, 11]
WORKED_BWT = b"nle_pl\x00nnlleee_eaae"
WORKED_LF = [15, 11, 5, 1, 18, 12, 0, 16, 17, 13, 14, 6, 7, 8, 2, 9, 3, 4, 10]
WORKED_LCP = [-1, 0, 1, 0, 5, 0, 1, 2, 3, 1, 1, 0, 1, 2, 2, 0, 1, 4, 0, -1]

BANANA_SA = [6, 5, 3, 1, 0, 4, 2]
BANANA_ISA = [4, 3, 6, 2, 5, 1, 0]
BANANA_BWT = b"annb\x00aa"
BANANA_LF = [1, 5, 6, 4, 0, 2, 3]
BANANA_LCP = [-1, 0, 1, 3, 0, 0, 2, -1]


def random_text(rng, n, sigma):
    """Bytes 1..255 drawn from an alphabet of ``sigma`` symbols."""
    letters = rng.choice(np.arange(1, 256), size=sigma, replace=False)
    return bytes(rng.choice(letters, size=n).astype(np.uint8))


def prepared(raw):
    t = load_text(raw)
    sa = build_suffix_array(t)
    return t, sa, build_bwt(t, sa)


@pytest.fixture
def worked():
    return prepared(WORKED)


@pytest.fixture
def banana():
    return prepared(b"banana")


# criterion number -> (passed, title, detail), filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num}. {title}: {detail}")
