"""Congruence discovery and verification for regular partitions.

Three workflows share this module:

  * scan primes l for T(l)-annihilation of the attached form (each hit is a
    Sturm certificate that b_k((m*l*n - 1)/d) == 0 mod m for n coprime to l);
  * turn a certified pair (m, l) into an explicit progression
    b_k(A*n + B) == 0 (mod m) with A = m*l^2, in either the minimal-offset
    or the shifted closed form -- both are specializations n |-> n0 + d*l*t
    of the certified statement, so their soundness is inherited;
  * directly evaluate b_k(A*n + B) mod m over a window, the empirical check
    that backs everything else.

The residue-class scan (``residue_criterion``) is the complementary negative
tool: a single witness b_k(m*kprime + (m^2-1)/d) != 0 (mod m) rules out
"all residues r mod m occur as b_k((mn-1)/d) mod m are 0" -- i.e. it feeds
the result that b_k takes every residue class infinitely often.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .errors import LengthOverflow, NotOneMod12, ParseError, PrecisionOverflow
from .hecke import get_family, sturm_bound, verify_hecke_vanishing
from .modarith import PrimeModulus, is_prime, primes_in
from .regpart import bk_at_progression, bk_series


@dataclass(frozen=True)
class Congruence:
    """Claim b_k(A*n + B) == 0 (mod m) for all n >= 0; B normalized to [0, A)."""

    k: int
    m: int
    A: int
    B: int
    provenance: str = "external"

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("regularity index k must be at least 2")
        if self.A < 1:
            raise ValueError("progression step A must be positive")
        PrimeModulus(self.m)
        object.__setattr__(self, "B", self.B % self.A)

    def __str__(self) -> str:
        return f"b{self.k}({self.A}n+{self.B}) == 0 mod {self.m}"


def format_congruence(c: Congruence) -> str:
    return str(c)


def parse_congruence(text: str) -> Congruence:
    """Parse `b<k>(<A>n+<B>) == 0 mod <m>`; whitespace between tokens is free."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def expect(lit: str):
        nonlocal pos
        skip_ws()
        if not text.startswith(lit, pos):
            raise ParseError(f"expected {lit!r}", pos)
        pos += len(lit)

    def integer() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected an integer", pos)
        return int(text[start:pos])

    expect("b")
    k = integer()
    expect("(")
    A = integer()
    expect("n")
    expect("+")
    B = integer()
    expect(")")
    expect("==")
    expect("0")
    expect("mod")
    m = integer()
    skip_ws()
    if pos != n:
        raise ParseError("unexpected trailing input", pos)
    try:
        return Congruence(k, m, A, B)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


@dataclass(frozen=True)
class Witness:
    """A nonvanishing value b_k(argument) == e (mod m) found by the scan."""

    kprime: int
    e: int
    argument: int
    regime: str = "primary"


def derive_progression(family, m: int, l: int,
                       variant: str = "canonical-min-B") -> Congruence:
    """Explicit progression from a certified pair (m, l).

    canonical-min-B picks the least n0 > 0 with d | m*l*n0 - 1 and
    gcd(n0, l) = 1, giving the smallest offset; paper-form substitutes
    n -> d*n*l + m*l + d wholesale.  Both have step A = m*l^2.
    """
    fam = get_family(family)
    m = fam.check_modulus(m)
    if not is_prime(l):
        raise ValueError(f"l = {l} must be prime")
    d = fam.d
    if math.gcd(l, d) != 1:
        raise ValueError(f"l = {l} shares a factor with d = {d}; "
                         "the index map has no admissible class")
    A = m * l * l
    prov = f"hecke-pair({int(m)},{l})"
    if variant == "canonical-min-B":
        n0 = pow(m * l, -1, d)
        while math.gcd(n0, l) != 1:
            n0 += d
        B = (m * l * n0 - 1) // d
    elif variant == "paper-form":
        B = m * l + (m * m * l * l - 1) // d
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return Congruence(fam.k, m, A, B, provenance=prov)


def verify_congruence(cong: Congruence, n_count: Optional[int] = None, *,
                      config: Config = DEFAULT_CONFIG,
                      progress=None) -> Dict:
    """Evaluate b_k(A*n + B) mod m for n = 0..n_count-1 and report.

    Default n_count is 100, shrunk if the required series length would
    exceed the memory cap; an explicit n_count past the cap raises.
    """
    if n_count is None:
        fit = (config.effective_cap - cong.B - 1) // cong.A + 1
        n_count = max(1, min(100, fit))
    if n_count < 1:
        raise ValueError("n_count must be positive")
    residues = bk_at_progression(cong.k, cong.m, cong.A, cong.B, n_count,
                                 config=config, progress=progress)
    nz = np.flatnonzero(residues)
    report = {
        "congruence": str(cong),
        "k": cong.k, "m": cong.m, "A": cong.A, "B": cong.B,
        "provenance": cong.provenance,
        "n_count": n_count,
        "length": cong.A * (n_count - 1) + cong.B + 1,
        "result": "PASS" if nz.size == 0 else "FAIL",
    }
    if nz.size:
        n = int(nz[0])
        report["first_violation"] = {
            "n": n,
            "index": cong.A * n + cong.B,
            "residue": int(residues[n]),
        }
    return report


# scan bounds per family: b3 has the proven j < 18(m-1); for b5 the stated
# 10(m-1) undershoots the 72(m-1) Sturm computation, which by the same
# argument gives j < 12(m-1) -- scan the wider range and label the regime.
_PRIMARY_SLOPE = {"b3": 18, "b5": 10}
_EXTENDED_SLOPE = {"b3": 18, "b5": 12}


def criterion_scan_bound(family, m: int) -> int:
    """Upper end (exclusive) of the kprime scan for residue_criterion."""
    fam = get_family(family)
    return max(_PRIMARY_SLOPE[fam.name], _EXTENDED_SLOPE[fam.name]) * (m - 1)


def residue_criterion(family, m: int, *,
                      config: Config = DEFAULT_CONFIG,
                      progress=None) -> Optional[Witness]:
    """First kprime with b_k(m*kprime + (m^2-1)/d) nonzero mod m, or None.

    A hit certifies (via Hecke/multiplicativity machinery) that b_k meets
    every residue class mod m infinitely often; None means the scan range
    is exhausted (as happens for b5 at m = 5, where every scanned argument
    lies on 5n + 4).
    """
    fam = get_family(family)
    m = fam.check_modulus(m)
    if (m * m - 1) % fam.d:
        raise ValueError(f"d = {fam.d} must divide m^2 - 1")
    offset = (m * m - 1) // fam.d
    primary = _PRIMARY_SLOPE[fam.name] * (m - 1)
    bound = max(primary, _EXTENDED_SLOPE[fam.name] * (m - 1))
    if bound == 0:
        return None
    length = m * (bound - 1) + offset + 1
    series = bk_series(fam.k, length, m, config=config, progress=progress)
    window = series.coeffs[offset::m][:bound]
    nz = np.flatnonzero(window)
    if nz.size == 0:
        return None
    kprime = int(nz[0])
    return Witness(kprime=kprime,
                   e=int(window[kprime]),
                   argument=m * kprime + offset,
                   regime="primary" if kprime < primary else "extended")


def lp_check(p: int, n_count: int = 100, *,
             config: Config = DEFAULT_CONFIG,
             progress=None) -> Dict:
    """Check b_3(p^3*n + (p^2-1)/12) == 0 (mod 3) for primes p == 1 (mod 12)."""
    if not is_prime(p):
        raise ValueError(f"p = {p} must be prime")
    if p % 12 != 1:
        raise NotOneMod12(f"p = {p} is {p % 12} (mod 12); need p == 1 (mod 12)")
    cong = Congruence(3, 3, p ** 3, (p * p - 1) // 12,
                      provenance=f"mod3-family(p={p})")
    report = verify_congruence(cong, n_count, config=config, progress=progress)
    report["p"] = p
    return report


def find_vanishing_primes(family, m: int, l_min: int, l_max: int, *,
                          serre_filter: bool = False,
                          config: Config = DEFAULT_CONFIG,
                          progress=None,
                          on_result: Optional[Callable[[Dict], None]] = None) -> List[Dict]:
    """Certificates for every prime l in [l_min, l_max] with T(l)F == 0 mod m.

    Candidates failing the memory cap are reported as overflow records (not
    fatal); l = m is skipped.  With serre_filter, only l == -1 (mod N*m) are
    tried -- the class guaranteed to annihilate everything, but far from
    exhaustive (the known small hits like l = 61 lie outside it), hence off
    by default.  ``on_result`` sees every record in ascending l, for
    streaming; the return value is the vanishing certificates only.
    """
    fam = get_family(family)
    m = fam.check_modulus(m)
    if l_min < 2:
        raise ValueError("l_min must be at least 2")
    space = fam.space(m)
    S = sturm_bound(space.weight, space.level)

    candidates = [int(l) for l in primes_in(l_min, l_max + 1) if l != m]
    if serre_filter:
        nm = fam.attached_level * m
        candidates = [l for l in candidates if l % nm == nm - 1]

    # one shared series sized for the largest candidate that fits the cap
    shared = None
    fits = [l for l in candidates
            if fam.bk_length_for(l * (S + 1), m) <= config.effective_cap]
    if fits:
        need = fam.bk_length_for(fits[-1] * (S + 1), m)
        shared = bk_series(fam.k, need, m, config=config, progress=progress)

    def certify(l: int) -> Dict:
        try:
            return verify_hecke_vanishing(fam, m, l, config=config, bk=shared)
        except PrecisionOverflow as exc:
            return {
                "family": fam.name, "m": int(m), "l": l,
                "verdict": "precision-overflow",
                "needed": exc.needed, "cap": exc.cap,
            }

    if config.threads > 1 and len(candidates) > 1:
        # workers only read the shared series; map() keeps ascending-l order
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = pool.map(certify, candidates)
    else:
        records = map(certify, candidates)

    hits: List[Dict] = []
    for cert in records:
        if on_result is not None:
            on_result(cert)
        if cert["verdict"] == "vanishes":
            hits.append(cert)
    return hits
