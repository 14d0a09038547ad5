"""Exact computations in P2(K^2) and the Borsuk-Ulam classification of [T^2, K^2] for τ1."""
from .buc import (
    BUVerdict,
    Reason,
    WitnessPair,
    WitnessReport,
    WitnessStatus,
    classify,
    generate_witness,
    verify_witness,
)
from .errors import (
    KleinBUError,
    NonCommuting,
    NotInKernel,
    NotInSigma,
    ParseError,
    PreconditionFail,
    ZeroInput,
    ZeroR2,
)
from .kerg import AbKerG, BBasisWord, abelianize, abelianize_word, to_b_basis
from .p2 import P2Elem, l_sigma, parse_p2, rho, sigma_sq, theta
from .pi1k import HomNormalForm, HomPair, Pi1K, normalize_hom, parse_pi1k
from .word import FreeWord, parse_word

__version__ = "0.1.0"

__all__ = [
    "AbKerG", "BBasisWord", "BUVerdict", "FreeWord", "HomNormalForm", "HomPair",
    "KleinBUError", "NonCommuting", "NotInKernel", "NotInSigma", "P2Elem", "ParseError",
    "Pi1K", "PreconditionFail", "Reason", "WitnessPair", "WitnessReport", "WitnessStatus",
    "ZeroInput", "ZeroR2", "abelianize", "abelianize_word", "classify", "generate_witness",
    "l_sigma", "normalize_hom", "parse_p2", "parse_pi1k", "parse_word", "rho", "sigma_sq",
    "theta", "to_b_basis", "verify_witness",
]
