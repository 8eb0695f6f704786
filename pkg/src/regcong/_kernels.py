"""Compiled inner loops for truncated power-series division.

Both kernels solve den * g = num coefficient by coefficient, where den has
constant term 1 and is given by its support above index 0:

    g[n] = num[n] - sum_t den[p_t] * g[n - p_t]   (mod m)

``solve_blocked_u8`` is the fast path for sparse +-1 denominators (Euler
products).  It splits the support at a block width T: terms with index >= T
only ever read finished blocks, so their contribution is accumulated with
contiguous subview loops that LLVM turns into SIMD adds; the few terms below
T stay in a scalar carry loop.  Throughput is roughly 10x the naive loop.

``solve_seq_i64`` is the general path: arbitrary centered values, arbitrary
modulus below 2**20, int64 storage.  It is O(L * nnz) and meant for
analysis-scale lengths.

Both kernels advance a half-open range [s0, s1) so callers can slab long
computations and report progress between slabs; g[:s0] must already be final.
"""
import numpy as np
from numba import njit

# Block width for the SIMD path.  8192 keeps the int32 accumulator in L1 and
# leaves ~150 support terms in the scalar carry loop.
BLOCK = 8192


@njit(cache=True, nogil=True)
def solve_blocked_u8(den_idx, den_sgn, num_idx, num_val, g, s0, s1, m, T):
    nt = den_idx.shape[0]
    npts = num_idx.shape[0]
    ncut = 0
    while ncut < nt and den_idx[ncut] < T:
        ncut += 1
    acc = np.zeros(T, dtype=np.int32)
    ptr = np.searchsorted(num_idx, s0)
    for s in range(s0, s1, T):
        e = min(s + T, s1)
        bl = e - s
        for i in range(bl):
            acc[i] = 0
        # Far terms: index >= T, so every source index lies below s.
        for t in range(ncut, nt):
            p = den_idx[t]
            if p >= e:
                break
            lo = p if p > s else s
            ln = e - lo
            a = acc[lo - s:lo - s + ln]
            b = g[lo - p:lo - p + ln]
            if den_sgn[t] > 0:
                for i in range(ln):
                    a[i] -= b[i]
            else:
                for i in range(ln):
                    a[i] += b[i]
        # Carry loop: near terms may read values produced inside this block.
        for n in range(s, e):
            x = np.int64(acc[n - s])
            if ptr < npts and num_idx[ptr] == n:
                x += num_val[ptr]
                ptr += 1
            for t in range(ncut):
                p = den_idx[t]
                if p > n:
                    break
                if den_sgn[t] > 0:
                    x -= np.int64(g[n - p])
                else:
                    x += np.int64(g[n - p])
            g[n] = x % m


@njit(cache=True, nogil=True)
def solve_seq_i64(den_idx, den_cval, num_idx, num_val, g, s0, s1, m):
    nt = den_idx.shape[0]
    npts = num_idx.shape[0]
    ptr = np.searchsorted(num_idx, s0)
    for n in range(s0, s1):
        x = np.int64(0)
        if ptr < npts and num_idx[ptr] == n:
            x = num_val[ptr]
            ptr += 1
        for t in range(nt):
            p = den_idx[t]
            if p > n:
                break
            x -= den_cval[t] * g[n - p]
        g[n] = x % m


def warm_up() -> None:
    """Trigger JIT compilation with a tiny workload."""
    g = np.zeros(8, np.uint8)
    one = np.array([0], np.int64)
    val = np.array([1], np.int64)
    idx = np.array([1, 2], np.int64)
    sgn = np.array([-1, -1], np.int64)
    solve_blocked_u8(idx, sgn, one, val, g, 0, 8, 5, 4)
    g64 = np.zeros(8, np.int64)
    solve_seq_i64(idx, sgn.copy(), one, val, g64, 0, 8, 5)
