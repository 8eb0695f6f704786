"""k-regular partition numbers b_k(n) and their residues.

b_k(n) counts partitions of n with no part divisible by k; equivalently (by
Glaisher's bijection) partitions where no part repeats k or more times.  The
generating function is

    sum_n b_k(n) q^n = prod_{n>=1} (1 - q^(kn)) / (1 - q^n),

so a length-L residue table mod m is one sparse series division: numerator
support the k-scaled pentagonal numbers, denominator support the plain ones.
Both count O(sqrt(L)) terms and the solve is linear-time per coefficient.

``bk_exact`` and ``bk_enum`` are deliberately independent small-n oracles --
tabulation versus enumeration over both characterizations -- used to pin down
the fast path.
"""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import List, Sequence

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .errors import LengthOverflow
from .modarith import PrimeModulus
from .qseries import Series, _solve, pentagonal_support, save_series, load_series

_EXACT_LIMIT = 100_000
_ENUM_LIMIT = 60


def bk_descriptor(k: int, m: int, length: int) -> str:
    return f"bk:k={k}:m={m}:L={length}"


def _cache_path(cache_dir: Path, k: int, m: int, length: int) -> Path:
    return Path(cache_dir) / f"bk_k{k}_m{m}_L{length}.qs1"


def bk_series(k: int, length: int, m: int, *,
              config: Config = DEFAULT_CONFIG,
              progress=None) -> Series:
    """Residues b_k(0..length-1) mod m as a Series.

    Honors ``config.effective_cap`` (raising LengthOverflow past it) and, when
    ``config.cache_dir`` is set, reuses / writes a QS1 file keyed by (k, m, L).
    """
    if k < 2:
        raise ValueError("regularity index k must be at least 2")
    if length < 1:
        raise ValueError("length must be positive")
    m = PrimeModulus(m)
    if length > config.effective_cap:
        raise LengthOverflow(length, config.effective_cap,
                             f"b_{k} series mod {m}")

    path = None
    if config.cache_dir is not None:
        path = _cache_path(config.cache_dir, k, m, length)
        if path.is_file():
            try:
                series, desc = load_series(path)
            except ValueError:
                pass  # stale or corrupt cache entry: rebuild and overwrite
            else:
                if desc == bk_descriptor(k, m, length) and series.m == m \
                        and series.length == length:
                    return series

    den_idx, den_val = pentagonal_support(1, length)
    num_idx, num_val = pentagonal_support(k, length)
    num_idx = np.concatenate(([0], num_idx))
    num_val = np.concatenate(([1], num_val))
    series = _solve(den_idx, den_val, num_idx, num_val, length, m,
                    progress=progress, label=f"b_{k} mod {m}")

    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_series(path, series, bk_descriptor(k, m, length))
    return series


def bk_exact(k: int, n_max: int) -> List[int]:
    """Exact table [b_k(0), ..., b_k(n_max)], big integers.

    Unbounded-knapsack over parts not divisible by k; values overflow 64
    bits around n = 400, hence Python ints and the ~1e5 size guard.
    """
    if k < 2:
        raise ValueError("regularity index k must be at least 2")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if n_max > _EXACT_LIMIT:
        raise ValueError(f"bk_exact is for n_max <= {_EXACT_LIMIT}")
    dp = [0] * (n_max + 1)
    dp[0] = 1
    for part in range(1, n_max + 1):
        if part % k == 0:
            continue
        for t in range(part, n_max + 1):
            dp[t] += dp[t - part]
    return dp


def bk_enum(k: int, n: int) -> int:
    """Exact b_k(n) by recursive enumeration, cross-checking both faces.

    Counts partitions of n with no part divisible by k and, independently,
    partitions with at most k-1 copies of each part; Glaisher's bijection
    says the counts coincide, and this asserts they do before answering.
    """
    if k < 2:
        raise ValueError("regularity index k must be at least 2")
    if n < 0:
        return 0
    if n > _ENUM_LIMIT:
        raise ValueError(f"bk_enum is for n <= {_ENUM_LIMIT}")

    @lru_cache(maxsize=None)
    def no_multiple(rem: int, top: int) -> int:
        # partitions of rem into parts <= top with k dividing no part
        if rem == 0:
            return 1
        total = 0
        for part in range(min(rem, top), 0, -1):
            if part % k:
                total += no_multiple(rem - part, part)
        return total

    @lru_cache(maxsize=None)
    def bounded_copies(rem: int, top: int) -> int:
        # partitions of rem into parts <= top, each used at most k-1 times
        if rem == 0:
            return 1
        if top == 0:
            return 0
        total = 0
        copies = 0
        while copies * top <= rem and copies < k:
            total += bounded_copies(rem - copies * top, top - 1)
            copies += 1
        return total

    first = no_multiple(n, n)
    second = bounded_copies(n, n)
    no_multiple.cache_clear()
    bounded_copies.cache_clear()
    if first != second:
        raise AssertionError(
            f"partition characterizations disagree at k={k}, n={n}: "
            f"{first} vs {second}")
    return first


def bk_at_progression(k: int, m: int, A: int, B: int, count: int, *,
                      config: Config = DEFAULT_CONFIG,
                      progress=None) -> np.ndarray:
    """Residues b_k(A*n + B) mod m for n = 0..count-1.

    One series of length A*(count-1) + B + 1 plus a strided read; the series
    build is the entire cost.
    """
    if A < 1 or B < 0 or count < 1:
        raise ValueError("need A >= 1, B >= 0, count >= 1")
    length = A * (count - 1) + B + 1
    series = bk_series(k, length, m, config=config, progress=progress)
    return series.coeffs[B::A][:count].astype(np.int64)


def bk_values(k: int, n_values: Sequence[int], m: int, *,
              config: Config = DEFAULT_CONFIG,
              progress=None) -> np.ndarray:
    """Residues b_k(n) mod m for the given indices (negatives count as 0)."""
    ns = np.asarray(list(n_values), dtype=np.int64)
    out = np.zeros(ns.shape[0], dtype=np.int64)
    pos = ns >= 0
    if np.any(pos):
        length = int(ns[pos].max()) + 1
        series = bk_series(k, length, m, config=config, progress=progress)
        out[pos] = series.coeffs[ns[pos]].astype(np.int64)
    return out
