"""Brute-force checks by exact polynomial arithmetic."""

from .harness import (Cancelled, IndeterminateRegime, OracleReport, load_corpus,
                      run_corpus, verify_predictions)
from .polys import RatPoly, iterate_poly, root_val_multiset
from .realcheck import RealCheck, real_all_real_check
from .resultant import (bareiss_det, difference_poly, difference_val_multiset,
                        resultant, sylvester_matrix)

__all__ = [
    "Cancelled",
    "IndeterminateRegime",
    "OracleReport",
    "RatPoly",
    "RealCheck",
    "bareiss_det",
    "difference_poly",
    "difference_val_multiset",
    "iterate_poly",
    "load_corpus",
    "real_all_real_check",
    "resultant",
    "root_val_multiset",
    "run_corpus",
    "sylvester_matrix",
    "verify_predictions",
]
