"""Eta-quotients on Gamma_0(N): weight, admissibility, character, cusp orders.

An eta-quotient prod_{delta | N} eta(delta z)^(r_delta) is holomorphic on the
upper half plane, so membership in M_k / S_k reduces to bookkeeping at the
cusps.  The standard criteria implemented here:

  * admissibility: sum delta*r_delta == 0 (mod 24), sum (N/delta)*r_delta == 0
    (mod 24), and integral weight k = (1/2) sum r_delta;
  * nebentypus: the real character n -> kronecker((-1)^k prod delta^r_delta, n),
    reduced modulo square factors;
  * order of vanishing at the cusp class c/d (d | N), kept as an exact integer
    in 24ths:  N * sum_delta r_delta * gcd(d,delta)^2 / (delta * gcd(d^2, N)).

Fractional q-powers never reach Series arithmetic: qexpansion returns the
integer prefactor (in 24ths) separately from the integral-exponent expansion.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import HalfIntegralWeight, NotAdmissible, ParseError
from .modarith import kronecker
from .qseries import Series, eta_factor


def divisors(n: int) -> List[int]:
    if n < 1:
        raise ValueError("divisors of a positive integer only")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def _factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of n >= 1 by trial division (levels are small)."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


class KroneckerCharacter:
    """Real character built from Kronecker-symbol factors.

    Each factor is either fixed-top ("top", D): n -> (D/n), or fixed-bottom
    ("bottom", D): n -> (n/D) with D odd positive.  ``period`` is a period of
    the function on odd arguments; it is a period on all of Z>=0 iff
    ``periodic`` is true, which fails exactly when some top factor has
    D = 3 (mod 4) -- e.g. (-1/2) = 1 but (-1/6) = -1, so (-1/n) has no
    period at even n.  Vectorized evaluation falls back to per-element
    symbols in that case; the lazily built table is idempotent to rebuild,
    so concurrent readers are safe.
    """

    __slots__ = ("factors", "name", "_period", "_periodic", "_table")

    def __init__(self, factors: Iterable[Tuple[str, int]], name: Optional[str] = None):
        norm = []
        for kind, d in factors:
            if kind == "top":
                if d == 0:
                    raise ValueError("top factor (0/n) is not a character")
            elif kind == "bottom":
                if d < 1 or d % 2 == 0:
                    raise ValueError("bottom factor requires odd positive D")
            else:
                raise ValueError(f"unknown factor kind {kind!r}")
            norm.append((kind, d))
        self.factors = tuple(norm)
        self.name = name or self._default_name()
        period = 1
        for kind, d in self.factors:
            period = math.lcm(period, 4 * abs(d) if kind == "top" else d)
        self._period = period
        self._periodic = all(kind != "top" or d % 4 != 3
                             for kind, d in self.factors)
        self._table = None

    def _default_name(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"({d}/n)" if kind == "top" else f"(n/{d})"
                        for kind, d in self.factors)

    @property
    def period(self) -> int:
        return self._period

    @property
    def periodic(self) -> bool:
        return self._periodic

    def __call__(self, n: int) -> int:
        v = 1
        for kind, d in self.factors:
            v *= kronecker(d, n) if kind == "top" else kronecker(n, d)
            if v == 0:
                return 0
        return v

    def table(self) -> np.ndarray:
        if not self._periodic:
            raise ValueError(
                f"{self.name} is not periodic at even arguments; "
                "evaluate pointwise instead")
        if self._table is None:
            self._table = np.array([self(n) for n in range(self._period)],
                                   dtype=np.int8)
            self._table.setflags(write=False)
        return self._table

    def values(self, ns) -> np.ndarray:
        """Vectorized evaluation; arguments must be nonnegative."""
        ns = np.asarray(ns, dtype=np.int64)
        if np.any(ns < 0):
            raise ValueError("vectorized evaluation expects n >= 0")
        if not self._periodic:
            return np.array([self(int(n)) for n in ns.ravel()],
                            dtype=np.int8).reshape(ns.shape)
        return self.table()[ns % self._period]

    def __mul__(self, other: "KroneckerCharacter") -> "KroneckerCharacter":
        return KroneckerCharacter(self.factors + other.factors,
                                  name=f"{self.name}*{other.name}")

    def __repr__(self) -> str:
        return f"KroneckerCharacter({self.name})"


def kron_top(d: int, name: Optional[str] = None) -> KroneckerCharacter:
    return KroneckerCharacter((("top", d),), name=name)


def kron_bottom(d: int, name: Optional[str] = None) -> KroneckerCharacter:
    return KroneckerCharacter((("bottom", d),), name=name)


CHI_TRIVIAL = KroneckerCharacter((), name="1")
CHI_MOD3 = kron_bottom(3, name="chi3")                # (n/3)
CHI_MOD5 = kron_bottom(5, name="chi5")                # (n/5)
CHI_DISC_MINUS3 = kron_top(-3, name="(-3/n)")         # discriminant -3
CHI_MOD12 = KroneckerCharacter((("bottom", 3), ("top", -4)), name="chi12")


def character_agreement(chi_a: KroneckerCharacter, chi_b: KroneckerCharacter,
                        modulus: int, span: Optional[int] = None) -> Dict:
    """Compare two characters on integers coprime to ``modulus``.

    Scans 1 <= n <= span (default: one full modulus period) and collects the
    n where the values differ.  Used to make descriptor discrepancies --
    e.g. (n/3)(-4/n) versus (-3/n)(n/3) -- explicit data instead of a
    convention fight.
    """
    if span is None:
        span = modulus
    disagreements = []
    checked = 0
    for n in range(1, span + 1):
        if math.gcd(n, modulus) != 1:
            continue
        checked += 1
        if chi_a(n) != chi_b(n):
            disagreements.append(n)
    return {
        "first": chi_a.name,
        "second": chi_b.name,
        "modulus": modulus,
        "span": span,
        "checked": checked,
        "agree": not disagreements,
        "disagreements": disagreements,
    }


@dataclass(frozen=True)
class SpaceParams:
    """Parameters (k, N, chi) of a space M_k(Gamma_0(N), chi)."""
    weight: int
    level: int
    character: KroneckerCharacter

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError("weight must be at least 1")
        if self.level < 1:
            raise ValueError("level must be a positive integer")


VERDICT_CUSP = "cusp-form"
VERDICT_HOLOMORPHIC = "holomorphic"
VERDICT_NON_HOLOMORPHIC = "non-holomorphic"
VERDICT_NOT_ADMISSIBLE = "not-admissible"


@dataclass(frozen=True)
class EtaQuotient:
    """prod_{delta | N} eta(delta z)^(r_delta) as a symbolic object."""

    level: int
    exponents: Tuple[Tuple[int, int], ...]

    def __init__(self, level: int, exponents: Mapping[int, int]):
        if level < 1:
            raise ValueError("level must be a positive integer")
        pairs = []
        for delta, r in sorted(exponents.items()):
            if r == 0:
                continue
            if delta < 1 or level % delta != 0:
                raise ValueError(f"delta={delta} does not divide level {level}")
            pairs.append((int(delta), int(r)))
        if not pairs:
            raise ValueError("at least one exponent must be nonzero")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "exponents", tuple(pairs))

    # -- invariants ---------------------------------------------------------

    def weight_twice(self) -> int:
        return sum(r for _, r in self.exponents)

    def weight(self) -> int:
        tw = self.weight_twice()
        if tw % 2:
            raise HalfIntegralWeight(
                f"sum of exponents is odd ({tw}); integral weight required")
        return tw // 2

    def prefactor24(self) -> int:
        """q-exponent of the leading term, in 24ths: sum delta * r_delta."""
        return sum(delta * r for delta, r in self.exponents)

    def violations(self) -> List[str]:
        out = []
        if self.prefactor24() % 24:
            out.append("(i) sum delta*r_delta not divisible by 24")
        conj = sum((self.level // delta) * r for delta, r in self.exponents)
        if conj % 24:
            out.append("(ii) sum (N/delta)*r_delta not divisible by 24")
        if self.weight_twice() % 2:
            out.append("(iii) half-integral weight")
        return out

    def admissible(self) -> bool:
        return not self.violations()

    # -- character ----------------------------------------------------------

    def character_top(self) -> int:
        """Squarefree D with chi(n) = (D/n): (-1)^k prod delta^r_delta mod squares."""
        k = self.weight()
        parity: Dict[int, int] = {}
        for delta, r in self.exponents:
            for p, e in _factorize(delta):
                parity[p] = (parity.get(p, 0) + e * r) % 2
        top = -1 if k % 2 else 1
        for p, odd in sorted(parity.items()):
            if odd:
                top *= p
        return top

    def character(self) -> KroneckerCharacter:
        bad = self.violations()
        if bad:
            raise NotAdmissible("; ".join(bad))
        return kron_top(self.character_top())

    def character_at(self, n: int) -> int:
        return self.character()(n)

    # -- cusps ----------------------------------------------------------------

    def cusp_order24(self, d: int) -> int:
        """24x the vanishing order at the cusp class c/d, exact integer.

        d = N is the cusp at infinity, d = 1 the cusp 0.
        """
        if d < 1 or self.level % d != 0:
            raise ValueError(f"d={d} does not divide level {self.level}")
        g2 = math.gcd(d * d, self.level)
        total = Fraction(0)
        for delta, r in self.exponents:
            total += Fraction(self.level * math.gcd(d, delta) ** 2 * r,
                              delta * g2)
        if total.denominator != 1:
            raise ArithmeticError(
                f"cusp order at d={d} is not in 24ths: {total}")
        return int(total)

    def cusp_orders(self) -> Dict[int, int]:
        return {d: self.cusp_order24(d) for d in divisors(self.level)}

    # -- classification -------------------------------------------------------

    def classify(self) -> Tuple[str, SpaceParams]:
        chi = self.character()  # raises NotAdmissible / HalfIntegralWeight
        orders = self.cusp_orders()
        if all(o > 0 for o in orders.values()):
            verdict = VERDICT_CUSP
        elif all(o >= 0 for o in orders.values()):
            verdict = VERDICT_HOLOMORPHIC
        else:
            verdict = VERDICT_NON_HOLOMORPHIC
        return verdict, SpaceParams(self.weight(), self.level, chi)

    def report(self) -> Dict:
        """Machine-readable analysis; never raises on inadmissible input."""
        bad = self.violations()
        half = self.weight_twice() % 2 != 0
        out = {
            "quotient": str(self),
            "level": self.level,
            "weight": None if half else self.weight_twice() // 2,
            "admissible": not bad,
            "violations": bad,
            "prefactor24": self.prefactor24(),
            "character_top": None if half else self.character_top(),
            "cusps": [{"d": d, "order24": o}
                      for d, o in sorted(self.cusp_orders().items())],
        }
        if bad:
            out["verdict"] = VERDICT_NOT_ADMISSIBLE
        else:
            out["verdict"], _ = self.classify()
        return out

    # -- expansion -------------------------------------------------------------

    def qexpansion(self, m: int, length: int) -> Tuple[int, Series]:
        """(prefactor24, series): quotient = q^(prefactor24/24) * series(q).

        Negative exponents go through pow-then-invert; every factor has
        constant term 1 so inversion never fails.
        """
        num = Series.one(m, length)
        den = None
        for delta, r in self.exponents:
            f = eta_factor(delta, length, m)
            if r > 0:
                num = num.mul(f.pow(r))
            else:
                g = f.pow(-r)
                den = g if den is None else den.mul(g)
        if den is not None:
            num = num.mul(den.invert())
        return self.prefactor24(), num

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        if self.level != other.level:
            raise ValueError("can only merge quotients on the same level")
        merged = dict(self.exponents)
        for delta, r in other.exponents:
            merged[delta] = merged.get(delta, 0) + r
        return EtaQuotient(self.level, merged)

    def __str__(self) -> str:
        body = " * ".join(f"eta({delta})^{r}" for delta, r in self.exponents)
        return f"{body} @ N={self.level}"


# -- text syntax --------------------------------------------------------------
#
#   quotient := term ("*" term)* ("@" "N" "=" int)?
#   term     := "eta" "(" int ")" ("^" int)?      (exponent may be negative)
#
# Whitespace-insensitive.  Without "@ N=", the level defaults to lcm(deltas).

_TOKEN = re.compile(r"\s*(eta|N|\d+|-\d+|[()^*@=])")


def parse_eta_quotient(text: str) -> EtaQuotient:
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def fail(msg: str):
        raise ParseError(msg, pos)

    def expect(lit: str):
        nonlocal pos
        skip_ws()
        if not text.startswith(lit, pos):
            fail(f"expected {lit!r}")
        pos += len(lit)

    def integer() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        if pos < n and text[pos] == "-":
            pos += 1
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start or text[start:pos] == "-":
            pos = start
            fail("expected an integer")
        return int(text[start:pos])

    exponents: Dict[int, int] = {}
    while True:
        expect("eta")
        expect("(")
        delta = integer()
        if delta < 1:
            fail("eta argument must be a positive integer")
        expect(")")
        skip_ws()
        r = 1
        if pos < n and text[pos] == "^":
            pos += 1
            r = integer()
        exponents[delta] = exponents.get(delta, 0) + r
        skip_ws()
        if pos < n and text[pos] == "*":
            pos += 1
            continue
        break

    level = None
    skip_ws()
    if pos < n and text[pos] == "@":
        pos += 1
        expect("N")
        expect("=")
        level = integer()
        if level < 1:
            fail("level must be a positive integer")
    skip_ws()
    if pos != n:
        fail("unexpected trailing input")

    if level is None:
        level = math.lcm(*exponents.keys())
    exponents = {d: r for d, r in exponents.items() if r != 0}
    if not exponents:
        raise ParseError("all exponents cancel to zero", 0)
    try:
        return EtaQuotient(level, exponents)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
