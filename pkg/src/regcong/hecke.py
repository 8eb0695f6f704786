"""Hecke operators on q-expansions, Sturm bounds, and attached forms.

The two congruence families are driven by the same construction:

    F(q) = sum_n b_k((m*n - 1)/d) q^n,   d = 12 (k=3) or 6 (k=5),

a subsampled regular-partition series that lands mod m in an explicit cusp
form space (weight 3m-3, level 432, chi12 for k=3; weight 2m-2, level 180,
chi5(n) = (n/5) for k=5).  A prime l with T(l)F == 0 (mod m) through the
space's Sturm bound annihilates F everywhere, which is the engine behind
every progression this package certifies.

T(l) acts on coefficients by a(n) -> a(l*n) + chi(l) l^(k-1) a(n/l), the
second term read as 0 when l does not divide n; index arithmetic is exact
division throughout, never rounding.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .errors import InsufficientPrecision, PrecisionOverflow
from .etaquot import (CHI_MOD3, CHI_MOD5, CHI_MOD12, EtaQuotient,
                      KroneckerCharacter, SpaceParams)
from .modarith import PrimeModulus, is_prime
from .qseries import Series
from .regpart import bk_descriptor, bk_series


def sturm_bound(weight: int, level: int) -> int:
    """floor(k*N/12 * prod_{p|N} (1 + 1/p)), exact integer arithmetic."""
    if weight < 1 or level < 1:
        raise ValueError("weight and level must be positive")
    psi = level
    n, p = level, 2
    while p * p <= n:
        if n % p == 0:
            psi = psi // p * (p + 1)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        psi = psi // n * (n + 1)
    return weight * psi // 12


@dataclass(frozen=True)
class Family:
    """One of the two constructions (k=3, d=12) or (k=5, d=6)."""

    name: str
    k: int                 # regularity index
    d: int                 # index divisor in (m*n - 1)/d; also m' = m mod d
    base_level: int        # level of the collapsed quotient (= k)
    attached_level: int    # level of the subsampled form's space
    weight_slope: int      # collapsed weight = slope*m; attached = slope*(m-1)
    character: KroneckerCharacter
    base_character: KroneckerCharacter

    def check_modulus(self, m: int) -> PrimeModulus:
        m = PrimeModulus(m)
        if m < 5:
            raise ValueError(f"family {self.name} needs a prime m >= 5")
        return m

    def mprime(self, m: int) -> int:
        return m % self.d

    def ab(self, m: int) -> Tuple[int, int]:
        mp = self.mprime(m)
        if self.name == "b3":
            return 9 - mp, mp - 3
        return 5 - mp, mp - 1

    def space(self, m: int) -> SpaceParams:
        return SpaceParams(self.weight_slope * (m - 1), self.attached_level,
                           self.character)

    def collapsed_quotient(self, m: int) -> EtaQuotient:
        a, b = self.ab(m)
        return EtaQuotient(self.base_level,
                           {self.base_level: a * m + 1, 1: b * m - 1})

    def f_quotient(self, m: int) -> EtaQuotient:
        """The uncollapsed product eta(kz)/eta(z) * eta^a(kmz) eta^b(mz)."""
        a, b = self.ab(m)
        exps = {self.base_level: 1, 1: -1,
                self.base_level * m: a}
        exps[m] = exps.get(m, 0) + b
        return EtaQuotient(self.base_level * m, exps)

    def subsampled_quotient(self, m: int) -> EtaQuotient:
        """The level-432 / level-180 quotient the subsampled form divides into."""
        a, b = self.ab(m)
        if self.name == "b3":
            return EtaQuotient(432, {36: 6 - a, 12: 6 - b})
        return EtaQuotient(180, {30: 4 - a, 6: 4 - b})

    def bk_length_for(self, f_length: int, m: int) -> int:
        """b_k series length feeding a subsampled form of ``f_length`` terms."""
        return max(1, (m * (f_length - 1) - 1) // self.d + 1)


FAMILIES: Dict[str, Family] = {
    "b3": Family("b3", 3, 12, 3, 432, 3, CHI_MOD12, CHI_MOD3),
    "b5": Family("b5", 5, 6, 5, 180, 2, CHI_MOD5, CHI_MOD5),
}


def get_family(name) -> Family:
    if isinstance(name, Family):
        return name
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from "
                         f"{sorted(FAMILIES)}") from None


@dataclass(frozen=True)
class AttachedForm:
    series: Series
    space: SpaceParams
    family: Family
    m: int


def attached_form(family, m: int, length: int, *,
                  config: Config = DEFAULT_CONFIG,
                  progress=None,
                  bk: Optional[Series] = None) -> AttachedForm:
    """F[n] = b_k((m*n - 1)/d) mod m for n < length, as an AttachedForm.

    Nonzero coefficients sit on the single residue class n == m^(-1) (mod d);
    the series is one strided copy out of the b_k table.  Pass ``bk`` to
    subsample a prebuilt (possibly longer) series.
    """
    fam = get_family(family)
    m = fam.check_modulus(m)
    if length < 1:
        raise ValueError("length must be positive")
    need = fam.bk_length_for(length, m)
    if bk is None:
        bk = bk_series(fam.k, need, m, config=config, progress=progress)
    elif bk.m != m or bk.length < need:
        raise ValueError("prebuilt series too short or modulus mismatch")

    out = np.zeros(length, dtype=bk.coeffs.dtype)
    n0 = pow(int(m), -1, fam.d)
    if n0 < length:
        j0 = (m * n0 - 1) // fam.d
        t_count = (length - n0 + fam.d - 1) // fam.d
        out[n0::fam.d] = bk.coeffs[j0:j0 + m * t_count:m]
    return AttachedForm(Series._wrap(m, out), fam.space(m), fam, m)


def hecke_T(f: Series, l: int, space: SpaceParams) -> Series:
    """(T(l)f)[n] = f[l*n] + chi(l) l^(k-1) f[n/l], length floor(L/l)."""
    if not is_prime(l):
        raise ValueError(f"Hecke index {l} must be prime")
    L_out = f.length // l
    if L_out == 0:
        raise InsufficientPrecision(
            f"series of length {f.length} cannot support T({l})")
    m = int(f.m)
    out = f.coeffs[:L_out * l:l].astype(np.int64)
    c = space.character(l) % m * pow(l, space.weight - 1, m) % m
    if c:
        inner = (L_out + l - 1) // l
        out[::l] += c * f.coeffs[:inner].astype(np.int64)
        out %= m
    return Series(m, out, reduce=False)


def _series_hash(bk: Series, descriptor: str) -> str:
    h = hashlib.sha256()
    h.update(descriptor.encode("utf-8"))
    h.update(bk.coeffs.tobytes())
    return h.hexdigest()


def verify_hecke_vanishing(family, m: int, l: int, *,
                           config: Config = DEFAULT_CONFIG,
                           progress=None,
                           bk: Optional[Series] = None) -> Dict:
    """Sturm certificate for T(l)F == 0 (mod m) on the attached space.

    Checks coefficients n = 0..S with S the Sturm bound; a clean sweep
    certifies the congruence for every n.  The certificate records the
    precision used and a hash of the underlying b_k series so a verdict can
    be audited against a cached series file.
    """
    fam = get_family(family)
    m = fam.check_modulus(m)
    if not is_prime(l):
        raise ValueError(f"Hecke index {l} must be prime")
    if l == m:
        raise ValueError("l = m is excluded; U(m) acts there instead")

    space = fam.space(m)
    S = sturm_bound(space.weight, space.level)
    f_len = l * (S + 1)
    need = fam.bk_length_for(f_len, m)
    if need > config.effective_cap:
        raise PrecisionOverflow(need, config.effective_cap,
                                f"certificate ({fam.name}, m={m}, l={l})")
    if bk is None:
        bk = bk_series(fam.k, need, m, config=config, progress=progress)
    form = attached_form(fam, m, f_len, config=config, bk=bk)
    image = hecke_T(form.series, l, space)

    window = image.coeffs[:S + 1]
    nz = np.flatnonzero(window)
    cert = {
        "family": fam.name,
        "m": int(m),
        "l": int(l),
        "weight": space.weight,
        "level": space.level,
        "sturm_bound": S,
        "precision": bk.length,
        "verdict": "vanishes" if nz.size == 0 else "does-not-vanish",
        "series_hash": _series_hash(bk, bk_descriptor(fam.k, m, bk.length)),
    }
    if nz.size:
        n = int(nz[0])
        cert["first_nonzero"] = {"n": n, "value": int(window[n])}
    return cert


def construction_check(family, m: int, length: int = 2000, *,
                       config: Config = DEFAULT_CONFIG) -> Dict:
    """Verify the eta-quotient scaffolding behind a family at one prime m.

    Four independent checks: (1) the mod-m collapse of f(m;z) onto the
    single quotient, with matching q-prefactors; (2) cusp-form classification
    of the collapsed quotient at weight slope*m; (3) the closed-form cusp
    orders at infinity and 0 against the general order formula; (4) the
    divisibility identities that make those orders positive integers.
    """
    fam = get_family(family)
    m = fam.check_modulus(m)
    mp = fam.mprime(m)
    a, b = fam.ab(m)
    collapsed = fam.collapsed_quotient(m)
    f_quot = fam.f_quotient(m)

    report = {
        "family": fam.name, "m": int(m), "mprime": mp, "a": a, "b": b,
        "collapsed": str(collapsed), "length": length,
        "checks": {}, "first_difference": None,
    }
    checks = report["checks"]

    pf_f, series_f = f_quot.qexpansion(m, length)
    pf_c, series_c = collapsed.qexpansion(m, length)
    checks["prefactors_match"] = pf_f == pf_c
    if series_f == series_c:
        checks["series_congruent"] = True
    else:
        checks["series_congruent"] = False
        n = int(np.flatnonzero(series_f.coeffs != series_c.coeffs)[0])
        report["first_difference"] = {"n": n, "f": series_f[n],
                                      "collapsed": series_c[n]}

    verdict, space = collapsed.classify()
    checks["cusp_form"] = verdict == "cusp-form"
    checks["weight"] = space.weight == fam.weight_slope * m
    checks["level"] = space.level == fam.base_level

    # closed forms for the extreme cusps; kL = 3 or 5, d = 12 or 6
    kL, d = fam.base_level, fam.d
    ord_inf = collapsed.cusp_order24(kL)
    ord_zero = collapsed.cusp_order24(1)
    checks["order_infinity"] = ord_inf == m * (kL * a + b) + (kL - 1) == pf_c
    checks["order_zero"] = ord_zero == m * (a + kL * b) - (kL - 1)
    checks["identity_infinity"] = (
        ord_inf % 24 == 0
        and (m * (d - mp) + 1) % d == 0
        and ord_inf // 24 == (m * (d - mp) + 1) // d)
    checks["identity_zero"] = (
        ord_zero % 24 == 0
        and (m * mp - 1) % d == 0
        and ord_zero // 24 == (m * mp - 1) // d)

    report["ok"] = all(checks.values())
    return report
