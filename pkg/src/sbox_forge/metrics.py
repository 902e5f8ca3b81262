"""Cryptographic metrics of n-bit to n-bit lookup tables.

All quantities are computed with integer arithmetic.  Probabilities are kept
as integer numerators over a fixed power-of-two denominator (:class:`Ratio`)
and only turned into floats for display.  Functions accept any table of
length 2**n with entries below 2**n; the 8-bit case is the one of interest.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ._backend import kernels
from .errors import InvalidTableError


@dataclass(frozen=True)
class Ratio:
    """An exact rational with a fixed, unreduced denominator."""

    num: int
    den: int

    def __float__(self):
        return self.num / self.den

    def __str__(self):
        return f"{self.num}/{self.den}"

    def to_json(self):
        return {"value": round(float(self), 6), "exact": str(self)}


def _prepare(table) -> Tuple[np.ndarray, int]:
    t = np.asarray(table, dtype=np.int64)
    size = t.shape[0] if t.ndim == 1 else 0
    if size < 2 or size & (size - 1):
        raise InvalidTableError(f"table length must be a power of two >= 2, got shape {t.shape}")
    if t.min() < 0 or t.max() >= size:
        raise InvalidTableError(f"table entries must lie in 0..{size - 1}")
    return t, size.bit_length() - 1


def _parity(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64).copy()
    out = np.zeros_like(v)
    while v.any():
        out ^= v & 1
        v >>= 1
    return out


def is_bijective(table) -> bool:
    t, _ = _prepare(table)
    return bool(np.unique(t).size == t.shape[0])


def fixed_points(table) -> Tuple[int, ...]:
    """Indices i with S[i] == i."""
    t, _ = _prepare(table)
    return tuple(int(i) for i in np.flatnonzero(t == np.arange(t.shape[0])))


def component_truth_table(table, mask: int) -> np.ndarray:
    """Truth table of x -> parity(mask & S[x])."""
    t, _ = _prepare(table)
    return _parity(t & int(mask)).astype(np.uint8)


def _spectra(truth_tables: np.ndarray) -> np.ndarray:
    spec = kernels.walsh(1 - 2 * np.asarray(truth_tables, dtype=np.int64))
    size = spec.shape[1]
    energy = (spec * spec).sum(axis=1)
    if not np.all(energy == size * size):
        raise AssertionError("Walsh spectrum violates Parseval's identity")
    return spec


def walsh_spectrum(f) -> np.ndarray:
    """W(w) = sum_x (-1)^(f(x) xor w.x) for a Boolean truth table ``f``."""
    bits = np.asarray(f, dtype=np.int64)
    size = bits.shape[0]
    if bits.ndim != 1 or size < 2 or size & (size - 1):
        raise ValueError(f"truth table length must be a power of two, got shape {bits.shape}")
    return _spectra(bits[None, :])[0]


def _nl_from_spectra(spec: np.ndarray) -> np.ndarray:
    half = spec.shape[1] // 2
    return half - np.abs(spec).max(axis=1) // 2


def _coordinate_tables(t: np.ndarray, masks) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.int64)
    return _parity(t[None, :] & masks[:, None])


def nonlinearity(table) -> Tuple[Tuple[int, ...], int]:
    """Per-output-bit nonlinearity and its minimum."""
    t, n = _prepare(table)
    nl = _nl_from_spectra(_spectra(_coordinate_tables(t, [1 << i for i in range(n)])))
    per_bit = tuple(int(v) for v in nl)
    return per_bit, min(per_bit)


def sac_counts(table) -> np.ndarray:
    """counts[i, j] = #{x : bit j of S(x) ^ S(x ^ 2^i) is set}; denominator 2^n."""
    t, n = _prepare(table)
    x = np.arange(t.shape[0])
    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        d = t ^ t[x ^ (1 << i)]
        for j in range(n):
            out[i, j] = int(((d >> j) & 1).sum())
    return out


def sac_matrix(table) -> Tuple[np.ndarray, float]:
    """SAC matrix (row = flipped input bit, column = output bit) and its mean."""
    counts = sac_counts(table)
    size = 1 << counts.shape[0]
    return counts / size, float(counts.sum() / (counts.size * size))


def bic_nl_matrix(table) -> np.ndarray:
    """Nonlinearity of bit_i(S) ^ bit_j(S) for i != j; diagonal is 0."""
    t, n = _prepare(table)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = np.zeros((n, n), dtype=np.int64)
    if not pairs:
        return out
    masks = [(1 << i) | (1 << j) for i, j in pairs]
    nl = _nl_from_spectra(_spectra(_coordinate_tables(t, masks)))
    for (i, j), v in zip(pairs, nl):
        out[i, j] = out[j, i] = v
    return out


def bic_nl(table) -> Tuple[np.ndarray, int]:
    m = bic_nl_matrix(table)
    n = m.shape[0]
    off = m[~np.eye(n, dtype=bool)]
    return m, int(off.min()) if off.size else 0


def bic_sac_counts(table) -> np.ndarray:
    """Pair-function avalanche counts summed over all n input flips.

    counts[i, j] = sum_k #{x : g(x) != g(x ^ 2^k)} with g = bit_i(S) ^ bit_j(S);
    the denominator is n * 2^n and the diagonal is 0.
    """
    t, n = _prepare(table)
    x = np.arange(t.shape[0])
    diffs = np.stack([t ^ t[x ^ (1 << k)] for k in range(n)])
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = int((((diffs >> i) ^ (diffs >> j)) & 1).sum())
    return out


def bic_sac(table) -> Tuple[np.ndarray, float]:
    """BIC-SAC matrix and the average over its off-diagonal entries."""
    counts = bic_sac_counts(table)
    n = counts.shape[0]
    den = n * (1 << n)
    off = n * (n - 1)
    return counts / den, float(counts.sum() / (off * den)) if off else 0.0


def lat(table) -> np.ndarray:
    """LAT[a, b] = #{x : a.x == b.S(x)} - 2^(n-1)."""
    t, n = _prepare(table)
    size = t.shape[0]
    comps = _coordinate_tables(t, np.arange(size))
    return (_spectra(comps).T // 2).astype(np.int64)


def _lap_count(table) -> int:
    table_lat = lat(table)
    table_lat[0, 0] = 0
    return int(np.abs(table_lat).max())


def lap(table) -> float:
    """Largest |LAT| over (a, b) != (0, 0), divided by 2^n."""
    t, _ = _prepare(table)
    return _lap_count(t) / t.shape[0]


def ddt(table) -> np.ndarray:
    """DDT[din, dout] = #{x : S(x ^ din) ^ S(x) == dout}."""
    t, _ = _prepare(table)
    return kernels.ddt(t)


def differential_uniformity(table) -> int:
    return int(ddt(table)[1:].max())


def dap(table) -> float:
    t, _ = _prepare(table)
    return differential_uniformity(t) / t.shape[0]


def anf(f) -> np.ndarray:
    """ANF coefficients of a Boolean truth table (binary Moebius transform)."""
    bits = np.asarray(f, dtype=np.int64)
    return kernels.moebius(bits[None, :])[0]


def _degree_from_anf(coeffs: np.ndarray) -> int:
    idx = np.flatnonzero(coeffs)
    if idx.size == 0:
        return 0
    return int(max(bin(int(i)).count("1") for i in idx))


def algebraic_degree(table) -> Tuple[Tuple[int, ...], int]:
    """Per-output-bit algebraic degree and its minimum."""
    t, n = _prepare(table)
    coeffs = kernels.moebius(_coordinate_tables(t, [1 << i for i in range(n)]))
    per_bit = tuple(_degree_from_anf(row) for row in coeffs)
    return per_bit, min(per_bit)


@dataclass(frozen=True)
class MetricsReport:
    bits: int
    bijective: bool
    fixed_points: Tuple[int, ...]
    nl_per_bit: Tuple[int, ...]
    nl_min: int
    sac_counts: np.ndarray = field(repr=False)
    bic_nl: np.ndarray = field(repr=False)
    bic_nl_min: int
    bic_sac_counts: np.ndarray = field(repr=False)
    lap_ratio: Ratio
    dap_ratio: Ratio
    algebraic_degree_per_bit: Tuple[int, ...]
    degree_min: int

    @property
    def size(self) -> int:
        return 1 << self.bits

    @property
    def fixed_point_count(self) -> int:
        return len(self.fixed_points)

    @property
    def sac(self) -> np.ndarray:
        return self.sac_counts / self.size

    @property
    def sac_mean_ratio(self) -> Ratio:
        return Ratio(int(self.sac_counts.sum()), self.sac_counts.size * self.size)

    @property
    def sac_mean(self) -> float:
        return float(self.sac_mean_ratio)

    @property
    def bic_sac(self) -> np.ndarray:
        return self.bic_sac_counts / (self.bits * self.size)

    @property
    def bic_sac_avg_ratio(self) -> Ratio:
        off = self.bits * (self.bits - 1)
        return Ratio(int(self.bic_sac_counts.sum()), max(off, 1) * self.bits * self.size)

    @property
    def bic_sac_avg(self) -> float:
        return float(self.bic_sac_avg_ratio)

    @property
    def lap(self) -> float:
        return float(self.lap_ratio)

    @property
    def dap(self) -> float:
        return float(self.dap_ratio)

    @property
    def differential_uniformity(self) -> int:
        return self.dap_ratio.num

    def to_json(self) -> dict:
        """JSON-ready dict; rationals carry a 6-place decimal and an exact string."""
        size = self.size
        bic_den = self.bits * size

        def matrix(counts, den, blank_diagonal=False):
            rows = []
            for i, row in enumerate(counts):
                cells = []
                for j, c in enumerate(row):
                    if blank_diagonal and i == j:
                        cells.append(None)
                    else:
                        cells.append(Ratio(int(c), den).to_json())
                rows.append(cells)
            return rows

        bic_nl = [
            [None if i == j else int(v) for j, v in enumerate(row)] for i, row in enumerate(self.bic_nl)
        ]
        return {
            "algebraic_degree_per_bit": list(self.algebraic_degree_per_bit),
            "bic_nl": bic_nl,
            "bic_nl_min": self.bic_nl_min,
            "bic_sac": matrix(self.bic_sac_counts, bic_den),
            "bic_sac_avg": self.bic_sac_avg_ratio.to_json(),
            "bijective": self.bijective,
            "bits": self.bits,
            "dap": self.dap_ratio.to_json(),
            "degree_min": self.degree_min,
            "differential_uniformity": self.differential_uniformity,
            "fixed_point_count": self.fixed_point_count,
            "fixed_points": list(self.fixed_points),
            "lap": self.lap_ratio.to_json(),
            "nl_min": self.nl_min,
            "nl_per_bit": list(self.nl_per_bit),
            "sac": matrix(self.sac_counts, size),
            "sac_mean": self.sac_mean_ratio.to_json(),
        }


def full_report(table) -> MetricsReport:
    t, n = _prepare(table)
    size = t.shape[0]
    nl_per_bit, nl_min = nonlinearity(t)
    bic_matrix, bic_min = bic_nl(t)
    degrees, degree_min = algebraic_degree(t)
    return MetricsReport(
        bits=n,
        bijective=is_bijective(t),
        fixed_points=fixed_points(t),
        nl_per_bit=nl_per_bit,
        nl_min=nl_min,
        sac_counts=sac_counts(t),
        bic_nl=bic_matrix,
        bic_nl_min=bic_min,
        bic_sac_counts=bic_sac_counts(t),
        lap_ratio=Ratio(_lap_count(t), size),
        dap_ratio=Ratio(differential_uniformity(t), size),
        algebraic_degree_per_bit=degrees,
        degree_min=degree_min,
    )
