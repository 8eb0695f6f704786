"""Congruences of k-regular partition numbers modulo primes.

Truncated q-series arithmetic over Z/mZ, eta-quotient analysis on Gamma_0(N),
Hecke operators with Sturm-bound certification, and discovery/verification of
Ramanujan-type progressions b_k(A*n + B) == 0 (mod m).
"""

from .config import Config, DEFAULT_CONFIG
from .errors import (HalfIntegralWeight, InsufficientPrecision,
                     LengthOverflow, ModulusMismatch, NonUnitConstantTerm,
                     NonzeroTruncatedHead, NotAdmissible, NotOneMod12,
                     ParseError, PrecisionOverflow, RegcongError, ZeroInverse)
from .modarith import PrimeModulus, inv_mod, is_prime, kronecker, primes_in
from .qseries import Series, eta_factor, load_series, save_series
from .etaquot import (CHI_DISC_MINUS3, CHI_MOD3, CHI_MOD5, CHI_MOD12,
                      CHI_TRIVIAL, EtaQuotient, KroneckerCharacter,
                      SpaceParams, character_agreement, kron_bottom,
                      kron_top, parse_eta_quotient)
from .regpart import (bk_at_progression, bk_enum, bk_exact, bk_series,
                      bk_values)
from .hecke import (AttachedForm, FAMILIES, Family, attached_form,
                    construction_check, get_family, hecke_T, sturm_bound,
                    verify_hecke_vanishing)
from .search import (Congruence, Witness, criterion_scan_bound,
                     derive_progression, find_vanishing_primes,
                     format_congruence, lp_check, parse_congruence,
                     residue_criterion, verify_congruence)

__version__ = "0.1.0"

__all__ = [
    "Config", "DEFAULT_CONFIG",
    "RegcongError", "ModulusMismatch", "NonUnitConstantTerm",
    "NonzeroTruncatedHead", "ZeroInverse", "HalfIntegralWeight",
    "NotAdmissible", "ParseError", "LengthOverflow", "PrecisionOverflow",
    "InsufficientPrecision", "NotOneMod12",
    "PrimeModulus", "inv_mod", "is_prime", "kronecker", "primes_in",
    "Series", "eta_factor", "save_series", "load_series",
    "EtaQuotient", "KroneckerCharacter", "SpaceParams", "kron_top",
    "kron_bottom", "character_agreement", "parse_eta_quotient",
    "CHI_TRIVIAL", "CHI_MOD3", "CHI_MOD5", "CHI_MOD12", "CHI_DISC_MINUS3",
    "bk_series", "bk_exact", "bk_enum", "bk_at_progression", "bk_values",
    "Family", "FAMILIES", "get_family", "AttachedForm", "attached_form",
    "hecke_T", "sturm_bound", "verify_hecke_vanishing", "construction_check",
    "Congruence", "Witness", "format_congruence", "parse_congruence",
    "derive_progression", "verify_congruence", "residue_criterion",
    "criterion_scan_bound", "lp_check", "find_vanishing_primes",
]
