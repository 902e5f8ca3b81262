"""numba kernels (default backend)."""

import os

import numba
import numpy as np

from . import _mapcore

# an outdated system TBB is rejected with a warning on every run; try it last
if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_map = _mapcore.build(numba.njit(cache=True))

wrap = _map["wrap"]
alg_terms = _map["alg_terms"]
unwrapped = _map["unwrapped"]
advance = _map["advance"]
to_byte = _map["to_byte"]
trajectory = _map["trajectory"]
draw_bytes = _map["draw_bytes"]
initial_table = _map["initial_table"]
initial_tables = _map["initial_tables"]
lyapunov = _map["lyapunov"]


@numba.njit(parallel=True, cache=True)
def bifurcation(a_values, x0, mode, samples, transient):
    out = np.empty((a_values.shape[0], samples), dtype=np.float64)
    # rows are independent; each a-value owns its row so assembly order is fixed
    for i in numba.prange(a_values.shape[0]):
        out[i] = trajectory(x0, a_values[i], mode, samples, transient)
    return out


@numba.njit(cache=True)
def walsh(signs):
    """In-place butterfly over each row of a (k, 2^n) array of +-1 values."""
    out = signs.astype(np.int64)
    k, size = out.shape
    for r in range(k):
        h = 1
        while h < size:
            for start in range(0, size, 2 * h):
                for j in range(start, start + h):
                    u = out[r, j]
                    v = out[r, j + h]
                    out[r, j] = u + v
                    out[r, j + h] = u - v
            h *= 2
    return out


@numba.njit(cache=True)
def moebius(bits):
    out = bits.astype(np.int64)
    k, size = out.shape
    for r in range(k):
        h = 1
        while h < size:
            for start in range(0, size, 2 * h):
                for j in range(start, start + h):
                    out[r, j + h] ^= out[r, j]
            h *= 2
    return out


@numba.njit(cache=True)
def ddt(table):
    size = table.shape[0]
    out = np.zeros((size, size), dtype=np.int64)
    for d in range(size):
        for x in range(size):
            out[d, table[x ^ d] ^ table[x]] += 1
    return out


@numba.njit(cache=True)
def _parity_table(size):
    par = np.zeros(size, dtype=np.int64)
    for v in range(1, size):
        par[v] = par[v >> 1] ^ (v & 1)
    return par


@numba.njit(cache=True)
def refine(table, partners, nbits, max_passes):
    size = table.shape[0]
    half = size // 2
    t = table.copy()
    par = _parity_table(size)

    signs = np.empty((nbits, size), dtype=np.int64)
    for i in range(nbits):
        for x in range(size):
            signs[i, x] = 1 - 2 * ((t[x] >> i) & 1)
    spec = walsh(signs)
    peak = np.zeros(nbits, dtype=np.int64)
    for i in range(nbits):
        for w in range(size):
            if abs(spec[i, w]) > peak[i]:
                peak[i] = abs(spec[i, w])

    cur_min = half - peak.max() // 2
    history = np.empty(max_passes * size + 1, dtype=np.int64)
    history[0] = cur_min
    accepted = 0
    passes = 0
    new_peak = np.empty(nbits, dtype=np.int64)
    order = np.empty(size, dtype=np.int64)
    fixed = 0
    for x in range(size):
        if t[x] == x:
            fixed += 1

    for pas in range(max_passes):
        passes += 1
        accepted_here = 0
        # fixed points are visited first, while NL still has slack
        k = 0
        for x in range(size):
            if t[x] == x:
                order[k] = x
                k += 1
        for x in range(size):
            if t[x] != x:
                order[k] = x
                k += 1
        for idx in range(size):
            p = order[idx]
            q = partners[pas * size + p] % size
            if q == p:
                continue
            sp = t[p]
            sq = t[q]
            before = (sp == p) + (sq == q)
            after = (sq == p) + (sp == q)
            if after > before:
                continue
            diff = sp ^ sq
            for i in range(nbits):
                if (diff >> i) & 1:
                    c = 4 * ((sp >> i) & 1) - 2  # F(q) - F(p)
                    m = 0
                    for w in range(size):
                        v = spec[i, w] + c * (par[w & q] - par[w & p]) * 2
                        if v < 0:
                            v = -v
                        if v > m:
                            m = v
                    new_peak[i] = m
                else:
                    new_peak[i] = peak[i]
            new_min = half - new_peak.max() // 2
            if not ((after < before and new_min >= cur_min) or new_min > cur_min):
                continue
            for i in range(nbits):
                if (diff >> i) & 1:
                    c = 4 * ((sp >> i) & 1) - 2
                    for w in range(size):
                        spec[i, w] += c * (par[w & q] - par[w & p]) * 2
                    peak[i] = new_peak[i]
            t[p] = sq
            t[q] = sp
            cur_min = new_min
            fixed += after - before
            accepted += 1
            accepted_here += 1
            history[accepted] = cur_min
        if accepted_here == 0 and fixed == 0:
            break
    return t, passes, history[: accepted + 1]
