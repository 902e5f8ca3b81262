"""Pure-numpy kernels (fallback backend, ``SBOX_FORGE_BACKEND=numpy``).

The map kernels are the interpreted twins of the numba ones; a single
trajectory is inherently sequential, so there is nothing to vectorise.
"""

import numpy as np

from . import _mapcore

_map = _mapcore.build()

wrap = _map["wrap"]
alg_terms = _map["alg_terms"]
unwrapped = _map["unwrapped"]
advance = _map["advance"]
to_byte = _map["to_byte"]
trajectory = _map["trajectory"]
draw_bytes = _map["draw_bytes"]
initial_table = _map["initial_table"]
initial_tables = _map["initial_tables"]
bifurcation = _map["bifurcation"]
lyapunov = _map["lyapunov"]


def _butterfly(a, combine):
    k, size = a.shape
    h = 1
    while h < size:
        blocks = a.reshape(k, size // (2 * h), 2, h)
        lo, hi = combine(blocks[:, :, 0, :], blocks[:, :, 1, :])
        a = np.stack((lo, hi), axis=2).reshape(k, size)
        h *= 2
    return a


def walsh(signs):
    a = np.asarray(signs, dtype=np.int64)
    return _butterfly(a.copy(), lambda u, v: (u + v, u - v))


def moebius(bits):
    a = np.asarray(bits, dtype=np.int64)
    return _butterfly(a.copy(), lambda u, v: (u, u ^ v))


def ddt(table):
    t = np.asarray(table, dtype=np.int64)
    size = t.shape[0]
    x = np.arange(size)
    d = x[:, None]
    out = t[x[None, :] ^ d] ^ t[None, :]
    flat = np.bincount((d * size + out).ravel(), minlength=size * size)
    return flat.reshape(size, size).astype(np.int64)


def _sign_matrix(size):
    x = np.arange(size)
    v = x[:, None] & x[None, :]
    par = np.zeros_like(v)
    while v.any():
        par ^= v & 1
        v >>= 1
    return 1 - 2 * par


def refine(table, partners, nbits, max_passes):
    t = np.array(table, dtype=np.int64)
    size = t.shape[0]
    half = size // 2
    chi = _sign_matrix(size)
    bit_idx = np.arange(nbits)

    spec = walsh(1 - 2 * ((t[None, :] >> bit_idx[:, None]) & 1))
    peak = np.abs(spec).max(axis=1)
    cur_min = half - int(peak.max()) // 2
    history = [cur_min]
    passes = 0
    fixed = int(np.count_nonzero(t == np.arange(size)))

    for pas in range(max_passes):
        passes += 1
        accepted_here = 0
        is_fixed = t == np.arange(size)
        order = np.concatenate((np.flatnonzero(is_fixed), np.flatnonzero(~is_fixed)))
        for p in order.tolist():
            q = int(partners[pas * size + p]) % size
            if q == p:
                continue
            sp, sq = int(t[p]), int(t[q])
            before = (sp == p) + (sq == q)
            after = (sq == p) + (sp == q)
            if after > before:
                continue
            rows = np.flatnonzero(((sp ^ sq) >> bit_idx) & 1)
            c = 4 * ((sp >> rows) & 1) - 2
            delta = c[:, None] * (chi[p] - chi[q])[None, :]
            candidate = spec[rows] + delta
            new_peak = peak.copy()
            new_peak[rows] = np.abs(candidate).max(axis=1)
            new_min = half - int(new_peak.max()) // 2
            if not ((after < before and new_min >= cur_min) or new_min > cur_min):
                continue
            spec[rows] = candidate
            peak = new_peak
            t[p], t[q] = sq, sp
            cur_min = new_min
            fixed += after - before
            accepted_here += 1
            history.append(cur_min)
        if accepted_here == 0 and fixed == 0:
            break
    return t, passes, np.array(history, dtype=np.int64)
