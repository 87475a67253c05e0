"""Exact design and verification of wavelet filter banks for any dilation.

Filters live on ``Z^n`` with an expanding integer dilation matrix.  Given a
pair of lowpass filters and generators satisfying the sum-of-vanishing-
products identity, :func:`synthesize_bank` builds primal and dual filter
banks; :func:`extract_svp` goes the other way.  All identities are checked
in exact radical-rational arithmetic.
"""

from .algebra import LaurentPoly, RadicalRational
from .corpus import CorpusEntry, builtin
from .filters import (
    Filter,
    FilterClass,
    PolyphaseVector,
    classify_filter,
    filter_from_z,
    filter_to_z,
    polyphase_decompose,
    polyphase_reconstruct,
)
from .lattice import (
    DilationScheme,
    NotExpanding,
    coset_reps,
    dual_coset_reps,
    fourier_matrix,
    validate_dilation,
)
from .muep import extract_svp, muep_verify_grid, muep_verify_polyphase
from .pyramid import PolyMatrix, extended_lp_matrix, lp_matrix, verify_core_identity
from .svp import (
    BankPair,
    FilterBank,
    SvpCertificate,
    sos_synthesize,
    sub_qmf_check,
    svp_residual,
    svp_verify,
    synthesize_bank,
)
from .transform import Signal, analyze, pr_check, synthesize_signal
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "BankPair",
    "CorpusEntry",
    "DilationScheme",
    "Filter",
    "FilterBank",
    "FilterClass",
    "LaurentPoly",
    "NotExpanding",
    "PolyMatrix",
    "PolyphaseVector",
    "RadicalRational",
    "Signal",
    "SvpCertificate",
    "Verdict",
    "analyze",
    "builtin",
    "classify_filter",
    "coset_reps",
    "dual_coset_reps",
    "extended_lp_matrix",
    "extract_svp",
    "filter_from_z",
    "filter_to_z",
    "fourier_matrix",
    "lp_matrix",
    "muep_verify_grid",
    "muep_verify_polyphase",
    "polyphase_decompose",
    "polyphase_reconstruct",
    "pr_check",
    "sos_synthesize",
    "sub_qmf_check",
    "svp_residual",
    "svp_verify",
    "synthesize_bank",
    "synthesize_signal",
    "validate_dilation",
    "verify_core_identity",
]
