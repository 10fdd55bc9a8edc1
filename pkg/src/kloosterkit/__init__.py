"""Exact binary Kloosterman sums and their 2-adic / 3-adic congruences."""

from .congruences import (
    CongruenceClass,
    lisonek_div16,
    predict_mod3_odd,
    predict_mod8,
    predict_mod16,
    predict_mod48_odd,
    predict_mod64,
    predict_mod192_odd,
    predict_ternary_mod9,
)
from .galois_ring import IntResidue, RingCtx, lifted_quadratic_trace, lifted_trace, ring_new, teichmuller
from .gauss import gamma2, gauss_sum, gk_check, gross_koblitz_rhs, stickelberger_check, wt2
from .gf2n import FieldCtx, field_new, quadratic_trace, trace
from .kloosterman import KSpectrum, TernaryFieldCtx, ksum_all, ksum_naive, ternary_ksum
from .verify import VerifyReport, run_verify, run_zeros

__version__ = "0.1.0"
