"""Truncated q-series arithmetic against naive references.

Oracles here are independent of the kernel code paths: frozen tables were
produced by an O(L^2) schoolbook product / partition DP (and the classical
values p(100) = 190569292, p(200) = 3972999029388), and the in-file naive
helpers recompute products and inverses the slow way.
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regcong._kernels import BLOCK, solve_blocked_u8, solve_seq_i64
from regcong.errors import (ModulusMismatch, NonUnitConstantTerm,
                            NonzeroTruncatedHead)
from regcong.qseries import (Series, _solve, eta_factor, pentagonal_support)

# prod_{n>=1} (1 - q^n) mod anything: schoolbook product, frozen at L = 64.
EULER_PRODUCT_64 = [
    1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1,
    0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
]

# Unrestricted partition numbers, partition DP.
PARTITIONS_31 = [
    1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297,
    385, 490, 627, 792, 1002, 1255, 1575, 1958, 2436, 3010, 3718, 4565, 5604,
]


def naive_mul(a, b, m, L):
    out = [0] * L
    for i, x in enumerate(a[:L]):
        for j, y in enumerate(b[:L - i]):
            out[i + j] = (out[i + j] + x * y) % m
    return out


def naive_inv(a, m, L):
    assert a[0] % m == 1
    g = [0] * L
    g[0] = 1
    for n in range(1, L):
        s = 0
        for i in range(1, min(n, len(a) - 1) + 1):
            s += a[i] * g[n - i]
        g[n] = (-s) % m
    return g


def random_series(rng, m, L, unit=False):
    c = rng.integers(0, m, size=L)
    if unit:
        c[0] = 1
    return Series(m, c)


def test_pentagonal_support_literals():
    idx, sgn = pentagonal_support(1, 30)
    assert idx.tolist() == [1, 2, 5, 7, 12, 15, 22, 26]
    assert sgn.tolist() == [-1, -1, 1, 1, -1, -1, 1, 1]
    idx2, sgn2 = pentagonal_support(2, 30)
    assert idx2.tolist() == [2, 4, 10, 14, 24]
    assert sgn2.tolist() == [-1, -1, 1, 1, -1]
    # generalized pentagonal numbers j(3j-1)/2 for j = 1,-1,2,-2,...
    got = pentagonal_support(1, 1000)[0].tolist()
    ref = sorted(j * (3 * j - 1) // 2 for j in range(-25, 26) if j)
    assert got == [g for g in ref if 0 < g < 1000]


def test_eta_factor_matches_schoolbook():
    for m in (5, 97, 65537):
        f = eta_factor(1, 64, m)
        assert f.tolist() == [c % m for c in EULER_PRODUCT_64]
    for delta in (2, 3, 5, 12):
        L = 80
        ref = [0] * L
        ref[0] = 1
        n = delta
        while n < L:
            for i in range(L - 1, n - 1, -1):
                ref[i] -= ref[i - n]
            n += delta
        for m in (3, 251, 1009):
            assert eta_factor(delta, L, m).tolist() == [c % m for c in ref]


def test_series_construction_and_storage():
    f = Series(5, [-1, 7, 10])
    assert f.tolist() == [4, 2, 0]
    assert f.coeffs.dtype == np.uint8
    g = Series(257, [256, -1])
    assert g.coeffs.dtype == np.int64
    assert g.tolist() == [256, 256]
    assert not f.coeffs.flags.writeable
    with pytest.raises(ValueError):
        Series(5, [])
    with pytest.raises(ValueError):
        Series(6, [1])  # composite modulus
    one = Series.one(5, 4)
    assert one.tolist() == [1, 0, 0, 0]
    assert len(f) == f.length == 3
    assert f[0] == 4 and f[2] == 0


def test_series_equality_hash_support():
    f = Series(5, [0, 4, 1, 3])
    assert f == Series(5, [0, -1, 1, -2])
    assert f != Series(7, [0, 4, 1, 3])
    assert hash(f) == hash(Series(5, [0, 4, 1, 3]))
    idx, val = f.support()
    assert idx.tolist() == [1, 2, 3]
    assert val.tolist() == [-1, 1, -2]  # centered representatives
    assert f.nnz() == 3
    assert len(f.sha256()) == 64
    assert f.sha256() != Series(5, [0, 4, 1, 2]).sha256()


def test_invert_gives_partition_numbers():
    for m in (5, 11, 65537):
        p = eta_factor(1, 31, m).invert()
        assert p.tolist() == [v % m for v in PARTITIONS_31]


def test_partition_spot_values_via_invert():
    # p(100) = 190569292 and p(200) = 3972999029388 reduced mod m.
    for m in (7, 251, 65537):
        p = eta_factor(1, 201, m).invert()
        assert p[100] == 190569292 % m
        assert p[200] == 3972999029388 % m


def test_invert_naive_dense_reference():
    rng = np.random.default_rng(7)
    for m in (5, 251, 1009):  # uint8 and int64 storage, non-pentagonal dens
        f = random_series(rng, m, 48, unit=True)
        assert f.invert().tolist() == naive_inv(f.tolist(), m, 48)
        assert (f * f.invert()) == Series.one(m, 48)


def test_invert_requires_unit_constant():
    with pytest.raises(NonUnitConstantTerm):
        Series(5, [2, 1, 1]).invert()
    with pytest.raises(NonUnitConstantTerm):
        Series(5, [0, 1]).invert()


def test_kernel_paths_agree():
    # The blocked uint8 kernel and the generic int64 kernel must produce the
    # same residues for identical +-1 denominators.
    m, L = 13, 3000
    den_idx, den_sgn = pentagonal_support(1, L)
    num_idx = np.array([0], np.int64)
    num_val = np.array([1], np.int64)
    g8 = np.zeros(L, dtype=np.uint8)
    solve_blocked_u8(den_idx, den_sgn, num_idx, num_val, g8, 0, L, m, BLOCK)
    g64 = np.zeros(L, dtype=np.int64)
    solve_seq_i64(den_idx, den_sgn, num_idx, num_val, g64, 0, L, m)
    assert np.array_equal(g8.astype(np.int64), g64)
    assert g8[:31].tolist() == [v % m for v in PARTITIONS_31]


def test_solve_slab_boundaries():
    # Tiny slabs must stitch together into the same answer as one big slab.
    m, L = 7, 1000
    den_idx, den_sgn = pentagonal_support(1, L)
    num_idx = np.array([0, 3], np.int64)
    num_val = np.array([1, -2], np.int64)
    whole = _solve(den_idx, den_sgn, num_idx, num_val, L, m)
    for slab in (7, 64, 999, 1000, 4096):
        chunked = _solve(den_idx, den_sgn, num_idx, num_val, L, m, slab=slab)
        assert chunked == whole
    # non-unit denominator values route through the int64 kernel
    den_val = den_sgn.copy()
    den_val[0] = 3
    whole = _solve(den_idx, den_val, num_idx, num_val, L, m)
    for slab in (7, 333):
        assert _solve(den_idx, den_val, num_idx, num_val, L, m,
                      slab=slab) == whole


def test_mul_both_routes_match_naive():
    rng = np.random.default_rng(11)
    m, L = 97, 60
    dense_a = random_series(rng, m, L)
    dense_b = random_series(rng, m, L)
    assert (dense_a * dense_b).tolist() == naive_mul(
        dense_a.tolist(), dense_b.tolist(), m, L)
    sparse = np.zeros(L, dtype=np.int64)
    sparse[[0, 7, 31]] = [1, 95, 3]
    sp = Series(m, sparse)
    assert (sp * dense_a).tolist() == naive_mul(
        sp.tolist(), dense_a.tolist(), m, L)
    assert (sp * dense_a) == (dense_a * sp)


def test_mul_truncates_to_shorter():
    f = Series(5, [1, 2, 3, 4])
    g = Series(5, [2, 1])
    assert (f * g).tolist() == [2, 0]
    assert (f + g).tolist() == [3, 3]


def test_modulus_mismatch():
    f, g = Series(5, [1, 2]), Series(7, [1, 2])
    with pytest.raises(ModulusMismatch):
        f.mul(g)
    with pytest.raises(ModulusMismatch):
        f.add(g)


def test_pow_matches_repeated_multiplication():
    rng = np.random.default_rng(3)
    for m in (3, 5, 251):
        f = random_series(rng, m, 40)
        acc = Series.one(m, 40)
        for e in range(12):
            assert f.pow(e) == acc
            acc = acc * f
    with pytest.raises(ValueError):
        f.pow(-1)


def test_pow_frobenius_identity():
    # f(q)^m = f(q^m) over Z/mZ, the backbone of the digit decomposition.
    rng = np.random.default_rng(4)
    for m in (3, 5, 7):
        f = random_series(rng, m, 30)
        assert f.pow(m) == f.dilate(m, length=30)


def test_pow_nonunit_constant_term():
    # Powers must work for any constant term, including short series where
    # the digit level exceeds the truncation length.
    f = Series(5, [2])
    assert f.pow(7).tolist() == [pow(2, 7, 5)]
    g = Series(5, [3, 1, 4])
    assert g.pow(11).tolist() == naive_pow_check(g.tolist(), 11, 5, 3)


def naive_pow_check(c, e, m, L):
    out = [1] + [0] * (L - 1)
    for _ in range(e):
        out = naive_mul(out, c, m, L)
    return out


def test_dilate_literals_and_bounds():
    f = Series(5, [1, 2, 3])
    assert f.dilate(2).tolist() == [1, 0, 2, 0, 3, 0]
    assert f.dilate(2, length=4).tolist() == [1, 0, 2, 0]
    assert f.dilate(1) == f
    assert f.dilate(4, length=2).tolist() == [1, 0]
    with pytest.raises(ValueError):
        f.dilate(0)
    with pytest.raises(ValueError):
        f.dilate(2, length=7)
    with pytest.raises(ValueError):
        f.dilate(2, length=0)


def test_u_literal():
    f = Series(5, [1, 2, 3, 4, 0, 1, 2, 3])
    assert f.u(3).tolist() == [1, 4, 2]
    assert f.u(1) == f
    assert f.u(8).tolist() == [1]
    with pytest.raises(ValueError):
        f.u(0)


def test_shift_unshift():
    f = Series(5, [1, 2, 3])
    assert f.shift(2).tolist() == [0, 0, 1, 2, 3]
    assert f.shift(0) == f
    assert f.shift(2).unshift(2) == f
    with pytest.raises(ValueError):
        f.shift(-1)
    with pytest.raises(NonzeroTruncatedHead):
        f.unshift(1)
    g = Series(5, [0, 0, 4, 1])
    assert g.unshift(2).tolist() == [4, 1]
    with pytest.raises(NonzeroTruncatedHead):
        g.unshift(4)  # nonzero head wins over the emptiness check
    with pytest.raises(ValueError):
        Series(5, [0, 0]).unshift(2)  # would leave nothing


@st.composite
def series_pair(draw):
    m = draw(st.sampled_from([2, 3, 5, 251, 65537]))
    L = draw(st.integers(1, 32))
    a = draw(st.lists(st.integers(0, m - 1), min_size=L, max_size=L))
    b = draw(st.lists(st.integers(0, m - 1), min_size=L, max_size=L))
    c = draw(st.lists(st.integers(0, m - 1), min_size=L, max_size=L))
    return Series(m, a), Series(m, b), Series(m, c)


@given(series_pair())
def test_ring_axioms(triple):
    f, g, h = triple
    one = Series.one(f.m, f.length)
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f + (-f) == Series(f.m, [0] * f.length)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * one == f


@given(series_pair())
def test_inverse_roundtrip(triple):
    f, _, _ = triple
    arr = f.coeffs.copy().astype(np.int64)
    arr[0] = 1
    f = Series(f.m, arr)
    assert f * f.invert() == Series.one(f.m, f.length)
    assert f.invert().invert() == f


@given(series_pair(), st.integers(1, 6))
def test_dilate_u_inverse(triple, j):
    f, _, _ = triple
    assert f.dilate(j).u(j) == f


@given(series_pair(), st.integers(0, 6), st.integers(0, 6))
def test_pow_additivity(triple, a, b):
    f, _, _ = triple
    assert f.pow(a) * f.pow(b) == f.pow(a + b)
