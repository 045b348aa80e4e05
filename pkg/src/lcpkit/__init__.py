"""Lightweight LCP-array construction from a suffix array and its BWT."""
from .baseline import lcp_bruteforce, lcp_kasai, lcp_phi, phi_plcp
from .bwt import build_bwt, build_lf, bwt_run_count
from .go import lcp_go, lcp_go2
from .hybrid import lcp_hybrid, phase1, phase2
from .sarray import build_suffix_array, invert, verify_suffix_array
from .textcore import Text, build_c_array, load_text

__all__ = [
    "Text", "load_text", "build_c_array",
    "build_suffix_array", "invert", "verify_suffix_array",
    "build_bwt", "build_lf", "bwt_run_count",
    "lcp_bruteforce", "lcp_kasai", "lcp_phi", "phi_plcp",
    "lcp_go", "lcp_go2", "lcp_hybrid", "phase1", "phase2",
]
