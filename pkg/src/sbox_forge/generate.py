"""Key-dependent S-box generation.

An initial S-box is filled from the chaotic stream: each iterate x yields the
candidate octet round(x*b) mod 256, which is kept only if it has not been
placed yet.  Refinement then hill-climbs over transpositions chosen by further
draws of the same stream, accepting a swap when it removes a fixed point
without lowering the minimum coordinate nonlinearity, or when it strictly
raises that minimum.
"""

from dataclasses import dataclass

import numpy as np

from . import _mapcore
from ._backend import kernels
from .chaos import MapParams, Mode
from .errors import GenerationStalled, RefinementFailed
from .tables import SIZE, SBox

# round(x*b) for x < 1 never exceeds round(b); below this no table can fill
_MIN_B = 254.5


@dataclass(frozen=True)
class GenConfig:
    max_iterations: int = 10**7
    refine: bool = False
    refine_max_passes: int = 64

    def __post_init__(self):
        if self.max_iterations < SIZE:
            raise ValueError(f"max_iterations must be >= {SIZE}")
        if self.refine_max_passes < 1:
            raise ValueError("refine_max_passes must be >= 1")


def _fill(key: MapParams, cfg: GenConfig):
    if key.b < _MIN_B:
        raise GenerationStalled(
            f"b={key.b!r} yields at most {int(round(key.b)) + 1} distinct octets; need 256"
        )
    table, placed, draws, x, status = kernels.initial_table(
        key.x0, key.a, key.b, key.mode.code, int(cfg.max_iterations)
    )
    if status == _mapcore.FIXED_POINT:
        raise GenerationStalled(
            f"map reached a fixed point x={x!r} after {draws} draws with {placed}/256 octets placed"
        )
    if status != _mapcore.DONE:
        raise GenerationStalled(f"only {placed}/256 distinct octets after {draws} draws")
    return table, float(x)


def generate_initial(key: MapParams, cfg: GenConfig = GenConfig()) -> SBox:
    table, _ = _fill(key, cfg)
    return SBox(table)


def _stream_after_fill(key: MapParams, cfg: GenConfig) -> float:
    try:
        return _fill(key, cfg)[1]
    except GenerationStalled:
        return key.x0


def refine(sbox, cfg: GenConfig, key: MapParams, start: float = None) -> SBox:
    """Remove fixed points and raise min coordinate NL by keyed transpositions.

    The partner for position p in pass k is the byte drawn at index
    k*256 + p of the key stream, continued from the state where initial
    generation stopped (or from ``start`` if given).
    """
    sbox = sbox if isinstance(sbox, SBox) else SBox(sbox)
    if start is None:
        start = _stream_after_fill(key, cfg)
    passes = int(cfg.refine_max_passes)
    partners = kernels.draw_bytes(start, key.a, key.b, key.mode.code, passes * SIZE)
    table, _, history = kernels.refine(np.asarray(sbox, dtype=np.int64), partners, 8, passes)
    if np.any(np.diff(history) < 0):
        raise AssertionError("refinement lowered the minimum nonlinearity")
    out = SBox(table)
    remaining = int(np.count_nonzero(table == np.arange(SIZE)))
    if remaining:
        raise RefinementFailed(
            f"{remaining} fixed point(s) survive {passes} passes without lowering nonlinearity"
        )
    return out


def generate(key: MapParams, cfg: GenConfig = GenConfig()) -> SBox:
    table, x = _fill(key, cfg)
    sbox = SBox(table)
    if cfg.refine:
        sbox = refine(sbox, cfg, key, start=x)
    return sbox


def generate_initial_batch(x0s, a_s, b_s, mode=Mode.ALG1, max_iterations: int = 10**7) -> np.ndarray:
    """Initial tables for many keys in one kernel call; shape (k, 256).

    Raises :class:`GenerationStalled` naming the first key that failed.
    """
    x0s = np.ascontiguousarray(x0s, dtype=np.float64)
    a_s = np.ascontiguousarray(a_s, dtype=np.float64)
    b_s = np.ascontiguousarray(b_s, dtype=np.float64)
    mode = Mode.parse(mode)
    for i in range(x0s.shape[0]):
        MapParams(x0s[i], a_s[i], b_s[i], mode)
    if np.any(b_s < _MIN_B):
        i = int(np.flatnonzero(b_s < _MIN_B)[0])
        raise GenerationStalled(f"key {i}: b={b_s[i]!r} cannot yield 256 distinct octets")
    tables, status = kernels.initial_tables(x0s, a_s, b_s, mode.code, int(max_iterations))
    bad = np.flatnonzero(status != _mapcore.DONE)
    if bad.size:
        raise GenerationStalled(f"key {int(bad[0])} stalled before placing 256 octets")
    return tables
