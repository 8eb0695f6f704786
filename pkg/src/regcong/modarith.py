"""Modular arithmetic primitives: primality, Kronecker symbol, sieves.

Everything here works on plain Python integers.  ``PrimeModulus`` is the
validated modulus type used by the series layer; it is an ``int`` subclass so
it can be passed anywhere an int is expected.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import List

from .errors import ZeroInverse

# Upper bound on series moduli.  Keeps every product/accumulation performed by
# the fixed-width kernels inside int64 with room to spare.
MAX_MODULUS = 1 << 20

# Witnesses that make Miller-Rabin deterministic for all n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for machine-scale integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=256)
def _check_prime_modulus(m: int) -> None:
    if m < 2 or m >= MAX_MODULUS:
        raise ValueError(f"modulus must lie in [2, {MAX_MODULUS}), got {m}")
    if not is_prime(m):
        raise ValueError(f"modulus must be prime, got {m}")


class PrimeModulus(int):
    """A prime modulus small enough for the fixed-width kernels."""

    def __new__(cls, m: int) -> "PrimeModulus":
        m = int(m)
        _check_prime_modulus(m)
        return super().__new__(cls, m)


def inv_mod(a: int, m: int) -> int:
    """Inverse of a mod m (m prime).  Raises ZeroInverse when m divides a."""
    a %= m
    if a == 0:
        raise ZeroInverse(f"0 has no inverse modulo {m}")
    return pow(a, -1, m)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for arbitrary integers.

    Extends the Jacobi symbol by (a|2) = 0, +1, -1 for a even, a = +-1 (mod 8),
    a = +-3 (mod 8); (a|-1) = -1 exactly for a < 0; (a|0) = 1 iff a = +-1.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        if e % 2 and a % 8 in (3, 5):
            result = -result
    # n now odd and positive: standard Jacobi loop with reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _simple_sieve(limit: int) -> bytearray:
    """Flags[i] = 1 iff i is prime, for 0 <= i < limit."""
    flags = bytearray([1]) * limit if limit > 0 else bytearray()
    if limit > 0:
        flags[0:1] = b"\x00"
    if limit > 1:
        flags[1:2] = b"\x00"
    p = 2
    while p * p < limit:
        if flags[p]:
            flags[p * p:limit:p] = bytearray(len(range(p * p, limit, p)))
        p += 1
    return flags

_SEGMENT = 1 << 18


def primes_in(lo: int, hi: int) -> List[int]:
    """Primes p with lo <= p < hi, in increasing order.

    Uses a direct sieve for small ranges and a segmented sieve once the upper
    bound passes 10**6, so memory stays proportional to the segment size.
    """
    lo = max(lo, 2)
    if hi <= lo:
        return []
    if hi <= 1_000_000:
        flags = _simple_sieve(hi)
        return [i for i in range(lo, hi) if flags[i]]
    root = math.isqrt(hi - 1) + 1
    base_flags = _simple_sieve(root + 1)
    base = [i for i in range(2, root + 1) if base_flags[i]]
    out: List[int] = []
    for start in range(lo, hi, _SEGMENT):
        end = min(start + _SEGMENT, hi)
        seg = bytearray([1]) * (end - start)
        for p in base:
            if p * p >= end:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            seg[first - start:end - start:p] = bytearray(
                len(range(first, end, p)))
        out.extend(start + i for i, f in enumerate(seg) if f)
    return out
