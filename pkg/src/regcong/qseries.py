"""Truncated power series over Z/mZ for a small prime m.

A ``Series`` holds coefficients c[0..L-1] of a power series in q, reduced to
least nonnegative residues.  Binary operations require equal moduli and
truncate to the shorter operand -- precision is whatever the caller built,
never silently extended.

The workhorse constructions are Euler products

    eta_factor(delta) = prod_{n>=1} (1 - q^(delta*n))
                      = sum_j (-1)^j q^(delta*j*(3j-1)/2),   j in Z,

whose support is the (scaled) generalized pentagonal numbers, O(sqrt(L/delta))
terms.  Division by such a factor runs through the blocked kernel, which is
what makes series lengths in the tens of millions practical.
"""
from __future__ import annotations

import hashlib
import math
import struct
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from . import _kernels
from .errors import (ModulusMismatch, NonUnitConstantTerm,
                     NonzeroTruncatedHead)
from .modarith import PrimeModulus


def pentagonal_support(delta: int, bound: int) -> Tuple[np.ndarray, np.ndarray]:
    """Support of eta_factor(delta) below ``bound``, excluding the 0 term.

    Returns ascending indices delta*j*(3j-1)/2 (j = 1, -1, 2, -2, ...) and the
    matching signs (-1)**j.
    """
    idx: List[int] = []
    sgn: List[int] = []
    j = 1
    while True:
        g1 = delta * (j * (3 * j - 1) // 2)
        g2 = delta * (j * (3 * j + 1) // 2)
        s = -1 if j % 2 else 1
        if g1 < bound:
            idx.append(g1)
            sgn.append(s)
        if g2 < bound:
            idx.append(g2)
            sgn.append(s)
        if g1 >= bound:
            break
        j += 1
    return np.asarray(idx, dtype=np.int64), np.asarray(sgn, dtype=np.int64)


def _storage_dtype(m: int):
    return np.uint8 if m <= 0xFF else np.int64


class Series:
    """Coefficients of a truncated power series over Z/mZ."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs, *, reduce: bool = True):
        self.m = PrimeModulus(m)
        arr = np.asarray(coeffs)
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise ValueError("coefficients must be a nonempty 1-d sequence")
        if reduce:
            arr = np.remainder(arr.astype(np.int64), self.m)
        arr = np.ascontiguousarray(arr.astype(_storage_dtype(self.m), copy=False))
        arr.setflags(write=False)
        self.coeffs = arr

    @classmethod
    def _wrap(cls, m: int, arr: np.ndarray) -> "Series":
        """Adopt an already-reduced array without copying."""
        return cls(m, arr, reduce=False)

    @classmethod
    def one(cls, m: int, length: int) -> "Series":
        arr = np.zeros(length, dtype=_storage_dtype(m))
        arr[0] = 1
        return cls._wrap(m, arr)

    # -- basic protocol ----------------------------------------------------

    @property
    def length(self) -> int:
        return self.coeffs.shape[0]

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, n: int) -> int:
        return int(self.coeffs[n])

    def tolist(self) -> List[int]:
        return [int(c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.m == other.m and self.length == other.length
                and bool(np.array_equal(self.coeffs, other.coeffs)))

    def __hash__(self):
        return hash((int(self.m), self.length, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        head = ", ".join(str(int(c)) for c in self.coeffs[:8])
        tail = ", ..." if self.length > 8 else ""
        return f"Series(m={int(self.m)}, L={self.length}, [{head}{tail}])"

    def nnz(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        """Nonzero indices and centered values in (-m/2, m/2]."""
        idx = np.flatnonzero(self.coeffs).astype(np.int64)
        val = self.coeffs[idx].astype(np.int64)
        val[val > self.m // 2] -= self.m
        return idx, val

    def sha256(self) -> str:
        return hashlib.sha256(self.coeffs.tobytes()).hexdigest()

    def _require_same_modulus(self, other: "Series") -> None:
        if self.m != other.m:
            raise ModulusMismatch(f"moduli differ: {self.m} vs {other.m}")

    # -- ring operations ---------------------------------------------------

    def add(self, other: "Series") -> "Series":
        self._require_same_modulus(other)
        L = min(self.length, other.length)
        out = (self.coeffs[:L].astype(np.int64)
               + other.coeffs[:L].astype(np.int64)) % self.m
        return Series._wrap(self.m, out.astype(_storage_dtype(self.m)))

    def __add__(self, other: "Series") -> "Series":
        return self.add(other)

    def __neg__(self) -> "Series":
        out = (-self.coeffs.astype(np.int64)) % self.m
        return Series._wrap(self.m, out.astype(_storage_dtype(self.m)))

    def __sub__(self, other: "Series") -> "Series":
        return self.add(-other)

    def mul(self, other: "Series") -> "Series":
        """Product truncated to the shorter operand.

        Routes through a shifted-add loop when one operand is sparse, a direct
        convolution otherwise.  Residues are below 2**20 so int64 accumulation
        is exact at any length in scope.
        """
        self._require_same_modulus(other)
        L = min(self.length, other.length)
        fa = self.coeffs[:L]
        fb = other.coeffs[:L]
        sparse_cut = max(32, 4 * math.isqrt(L))
        na, nb = np.count_nonzero(fa), np.count_nonzero(fb)
        if min(na, nb) <= sparse_cut:
            sp, dn = (fa, fb) if na <= nb else (fb, fa)
            idx = np.flatnonzero(sp).astype(np.int64)
            val = sp[idx].astype(np.int64)
            val[val > self.m // 2] -= self.m
            dense = dn.astype(np.int64)
            acc = np.zeros(L, dtype=np.int64)
            for i, v in zip(idx, val):
                acc[i:] += v * dense[:L - i]
            acc %= self.m
            return Series._wrap(self.m, acc.astype(_storage_dtype(self.m)))
        prod = np.convolve(fa.astype(np.int64), fb.astype(np.int64))[:L]
        prod %= self.m
        return Series._wrap(self.m, prod.astype(_storage_dtype(self.m)))

    def __mul__(self, other: "Series") -> "Series":
        return self.mul(other)

    def invert(self) -> "Series":
        """Multiplicative inverse, same length.

        Requires constant term 1.  Sparse +-1 denominators (Euler products)
        take the blocked kernel; everything else the generic sequential one.
        """
        if self[0] != 1:
            raise NonUnitConstantTerm(
                f"cannot invert series with constant term {self[0]}")
        L = self.length
        idx, val = self.support()
        keep = idx > 0
        idx, val = idx[keep], val[keep]
        return _solve(idx, val,
                      np.array([0], np.int64), np.array([1], np.int64),
                      L, self.m)

    def pow(self, e: int) -> "Series":
        """e-th power via base-m digits of e.

        h(q)**m = h(q**m) over Z/mZ, so f**e factors into binary powers of
        dilations f(q**(m**i)), one per digit of e -- no more than
        2*log2(m)*log_m(e) full-length products.
        """
        if e < 0:
            raise ValueError("negative exponent: invert explicitly instead")
        L = self.length
        out = Series.one(self.m, L)
        if e == 0:
            return out
        level = 1
        while e:
            e, digit = divmod(e, int(self.m))
            if digit:
                base = self.dilate(level, length=L) if level > 1 else self
                out = out.mul(_binary_pow(base, digit))
            level *= int(self.m)
        return out

    def __pow__(self, e: int) -> "Series":
        return self.pow(e)

    # -- index reshaping ---------------------------------------------------

    def dilate(self, j: int, length: Optional[int] = None) -> "Series":
        """Substitute q -> q**j: result[j*n] = self[n], zero elsewhere.

        Default length j*L keeps every known coefficient; an explicit shorter
        length truncates.  Lengths beyond j*L would need unknown coefficients
        and are rejected.
        """
        if j < 1:
            raise ValueError("dilation factor must be a positive integer")
        full = j * self.length
        if length is None:
            length = full
        if not 1 <= length <= full:
            raise ValueError(f"dilate length must lie in [1, {full}]")
        out = np.zeros(length, dtype=self.coeffs.dtype)
        out[::j] = self.coeffs[:(length + j - 1) // j]
        return Series._wrap(self.m, out)

    def u(self, j: int) -> "Series":
        """Index subsampling: result[n] = self[j*n], length ceil(L/j)."""
        if j < 1:
            raise ValueError("operator index must be a positive integer")
        return Series._wrap(self.m, self.coeffs[::j].copy())

    def shift(self, t: int) -> "Series":
        """Multiply by q**t: prepend t zeros, length grows to L + t."""
        if t < 0:
            raise ValueError("shift distance must be nonnegative")
        out = np.zeros(self.length + t, dtype=self.coeffs.dtype)
        out[t:] = self.coeffs
        return Series._wrap(self.m, out)

    def unshift(self, t: int) -> "Series":
        """Divide by q**t: drop t leading coefficients, which must be zero."""
        if t < 0:
            raise ValueError("shift distance must be nonnegative")
        if t > self.length:
            raise ValueError("cannot unshift past the end of the series")
        if np.any(self.coeffs[:t]):
            first = int(np.flatnonzero(self.coeffs[:t])[0])
            raise NonzeroTruncatedHead(
                f"coefficient {first} is nonzero; q**{t} does not divide")
        if t == self.length:
            raise ValueError("unshift would leave an empty series")
        return Series._wrap(self.m, self.coeffs[t:].copy())


def _binary_pow(f: Series, e: int) -> Series:
    out = Series.one(f.m, f.length)
    base = f
    while e:
        if e & 1:
            out = out.mul(base)
        e >>= 1
        if e:
            base = base.mul(base)
    return out


def _solve(den_idx: np.ndarray, den_val: np.ndarray,
           num_idx: np.ndarray, num_val: np.ndarray,
           L: int, m: int,
           progress=None, slab: int = 4_000_000,
           label: str = "series") -> Series:
    """Solve den * g = num for g, den having constant term 1.

    ``den_idx``/``den_val`` describe the denominator support above index 0
    with centered values; the numerator likewise (index 0 allowed).
    """
    pm1 = den_val.size == 0 or bool(np.all(np.abs(den_val) == 1))
    if m <= 0xFF and pm1:
        g = np.zeros(L, dtype=np.uint8)
        sgn = den_val
        for s0 in range(0, L, slab):
            s1 = min(s0 + slab, L)
            _kernels.solve_blocked_u8(den_idx, sgn, num_idx, num_val,
                                      g, s0, s1, m, _kernels.BLOCK)
            if progress is not None and L > slab:
                progress(f"{label}: {s1}/{L} coefficients")
    else:
        g = np.zeros(L, dtype=np.int64)
        for s0 in range(0, L, slab):
            s1 = min(s0 + slab, L)
            _kernels.solve_seq_i64(den_idx, den_val, num_idx, num_val,
                                   g, s0, s1, m)
            if progress is not None and L > slab:
                progress(f"{label}: {s1}/{L} coefficients")
        g = g.astype(_storage_dtype(m))
    return Series._wrap(m, g)


def eta_factor(delta: int, length: int, m: int) -> Series:
    """prod_{n>=1} (1 - q^(delta*n)) truncated to ``length`` terms mod m."""
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    if length < 1:
        raise ValueError("length must be positive")
    m = PrimeModulus(m)
    idx, sgn = pentagonal_support(delta, length)
    out = np.zeros(length, dtype=_storage_dtype(m))
    out[0] = 1
    out[idx] = np.remainder(sgn, m)
    return Series._wrap(m, out)


# -- functional aliases ----------------------------------------------------

def mul(f: Series, g: Series) -> Series:
    return f.mul(g)


def invert(f: Series) -> Series:
    return f.invert()


def pow_series(f: Series, e: int) -> Series:
    return f.pow(e)


def dilate(f: Series, j: int, length: Optional[int] = None) -> Series:
    return f.dilate(j, length)


def u_op(f: Series, j: int) -> Series:
    return f.u(j)


def shift(f: Series, t: int) -> Series:
    return f.shift(t)


def unshift(f: Series, t: int) -> Series:
    return f.unshift(t)


# -- binary cache ----------------------------------------------------------
#
# Layout: magic "QS1\0" | u32 modulus | u64 length | u8 itemsize |
#         u32 descriptor byte count | descriptor utf-8 | coefficients,
# all integers and coefficient words little-endian.

CACHE_MAGIC = b"QS1\x00"
_HEADER = struct.Struct("<4sIQBI")


def save_series(path: Union[str, Path], series: Series, descriptor: str) -> None:
    """Write a series with its descriptor string to a binary cache file."""
    desc = descriptor.encode("utf-8")
    itemsize = series.coeffs.dtype.itemsize
    word_dtype = "<u1" if itemsize == 1 else "<i8"
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, int(series.m), series.length,
                              itemsize, len(desc)))
        fh.write(desc)
        fh.write(np.ascontiguousarray(series.coeffs, dtype=word_dtype).tobytes())
    tmp.replace(path)


def load_series(path: Union[str, Path]) -> Tuple[Series, str]:
    """Read a series and its descriptor back from a binary cache file."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ValueError(f"{path}: truncated series cache header")
        magic, m, length, itemsize, desc_len = _HEADER.unpack(header)
        if magic != CACHE_MAGIC:
            raise ValueError(f"{path}: not a QS1 series cache")
        if itemsize not in (1, 8):
            raise ValueError(f"{path}: unsupported word size {itemsize}")
        desc = fh.read(desc_len).decode("utf-8")
        raw = fh.read(length * itemsize)
    if len(raw) != length * itemsize:
        raise ValueError(f"{path}: truncated coefficient payload")
    word_dtype = "<u1" if itemsize == 1 else "<i8"
    raw_words = np.frombuffer(raw, dtype=word_dtype)
    # Validate on the raw words: conversion to the storage dtype could wrap
    # out-of-range values into legal residues and mask corruption.
    if np.any(raw_words.astype(np.int64) >= m) or (
            itemsize == 8 and bool(np.any(raw_words < 0))):
        raise ValueError(f"{path}: coefficients not reduced modulo {m}")
    return Series._wrap(m, raw_words.astype(_storage_dtype(m))), desc
