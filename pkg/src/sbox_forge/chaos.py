"""The piecewise trigonometric map and its chaos diagnostics.

Two update rules are provided (:class:`Mode`):

``EQ1``
    x < 0.5:   x' = 0.52 + x + sin(a*x)**2
    otherwise: x' = 1.5 + a/2 - tan(x)

``ALG1``
    W = 1 - cos(x)/x + (3 + a)/x
    Y = sqrt(sin(x)) / (0.5 + a*x)
    x' = W*Y

Every update is reduced modulo 1 and clamped up to ``EPS`` so the state stays
in [EPS, 1).
"""

import csv
import enum
import io
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from . import _mapcore
from ._backend import kernels

EPS = _mapcore.EPS
B_MAX = 1e9
LYAPUNOV_DELTA0 = 1e-9
LYAPUNOV_MIN_ITERATIONS = 1000


class Mode(enum.Enum):
    EQ1 = "eq1"
    ALG1 = "alg1"

    @property
    def code(self) -> int:
        return _mapcore.EQ1 if self is Mode.EQ1 else _mapcore.ALG1

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown map mode {value!r}; expected 'eq1' or 'alg1'") from None


@dataclass(frozen=True)
class MapParams:
    """Secret key of the generator: initial state, control parameter, byte scale."""

    x0: float
    a: float
    b: float
    mode: Mode = Mode.ALG1

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        for name in ("x0", "a", "b"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if not 0.0 < self.x0 < 1.0:
            raise ValueError(f"x0 must lie in (0, 1), got {self.x0!r}")
        if not 0.0 < self.a < 2.0:
            raise ValueError(f"a must lie in (0, 2), got {self.a!r}")
        if not 0.0 < self.b <= B_MAX:
            raise ValueError(f"b must lie in (0, 1e9], got {self.b!r}")


@dataclass(frozen=True)
class ChaosState:
    x: float

    def __post_init__(self):
        x = float(self.x)
        if not EPS <= x < 1.0:
            raise ValueError(f"map state must lie in [{EPS}, 1), got {x!r}")
        object.__setattr__(self, "x", x)

    @classmethod
    def initial(cls, params: MapParams) -> "ChaosState":
        return cls(max(params.x0, EPS))


class Intermediates(NamedTuple):
    w: float
    y: float


class BifurcationRecord(NamedTuple):
    a: float
    x: float


@dataclass(frozen=True)
class LyapunovEstimate:
    value: float
    iterations: int
    counted: int
    method: str = "TWO_TRAJECTORY"

    @property
    def skipped(self) -> int:
        return self.iterations - self.counted

    def to_dict(self) -> dict:
        return {
            "counted": self.counted,
            "iterations": self.iterations,
            "method": self.method,
            "skipped": self.skipped,
            "value": self.value,
        }


def step(state: ChaosState, params: MapParams) -> ChaosState:
    """Advance the map by one iteration."""
    return ChaosState(kernels.advance(state.x, params.a, params.mode.code))


def unwrapped_step(state: ChaosState, params: MapParams) -> float:
    """The update value before the modulo-1 reduction."""
    return kernels.unwrapped(state.x, params.a, params.mode.code)


def intermediates(state: ChaosState, params: MapParams) -> Intermediates:
    """The ALG1 quantities W and Y at the current state."""
    return Intermediates(*kernels.alg_terms(state.x, params.a))


def trajectory(params: MapParams, n: int, transient: int = 0) -> np.ndarray:
    """The ``n`` states following ``transient`` discarded iterates of x0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if transient < 0:
        raise ValueError("transient must be >= 0")
    return kernels.trajectory(params.x0, params.a, params.mode.code, int(n), int(transient))


class BifurcationScan:
    """Post-transient samples over an evenly spaced sweep of ``a``.

    Rows are ordered by ``a`` and then by iterate index.
    """

    def __init__(self, a_values: np.ndarray, samples: np.ndarray):
        self.a_values = a_values
        self.samples = samples

    @property
    def a(self) -> np.ndarray:
        return np.repeat(self.a_values, self.samples.shape[1])

    @property
    def x(self) -> np.ndarray:
        return self.samples.ravel()

    def __len__(self):
        return self.samples.size

    def __iter__(self) -> Iterator[BifurcationRecord]:
        for a, row in zip(self.a_values, self.samples):
            for x in row:
                yield BifurcationRecord(float(a), float(x))

    def occupancy(self, bins: int = 64) -> np.ndarray:
        """Distinct histogram bins hit by each a-value's samples."""
        idx = np.minimum((self.samples * bins).astype(np.int64), bins - 1)
        return np.array([np.unique(row).size for row in idx])

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["a", "x"])
        for a, row in zip(self.a_values, self.samples):
            ra = repr(float(a))
            for x in row:
                w.writerow([ra, repr(float(x))])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def bifurcation_scan(
    a_min: float,
    a_max: float,
    a_steps: int,
    x0: float,
    samples: int,
    transient: int = 1000,
    mode=Mode.ALG1,
) -> BifurcationScan:
    mode = Mode.parse(mode)
    if not 0.0 < a_min < a_max < 2.0:
        raise ValueError(f"need 0 < a_min < a_max < 2, got a_min={a_min!r}, a_max={a_max!r}")
    if a_steps < 2:
        raise ValueError("a_steps must be >= 2")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if transient < 0:
        raise ValueError("transient must be >= 0")
    # validates x0
    MapParams(x0, a_min, 1.0, mode)
    a_values = np.linspace(a_min, a_max, int(a_steps))
    rows = kernels.bifurcation(a_values, float(x0), mode.code, int(samples), int(transient))
    return BifurcationScan(a_values, rows)


def lyapunov(params: MapParams, n: int) -> LyapunovEstimate:
    """Two-trajectory estimate of the largest Lyapunov exponent.

    A companion orbit starts ``LYAPUNOV_DELTA0`` away; after each step the log
    growth of the separation is accumulated and the companion is pulled back
    to that distance.  Separations are measured on the circle.  In EQ1 mode,
    steps whose pair straddles the branch point x = 0.5 are skipped and do not
    count toward the average.
    """
    if n < LYAPUNOV_MIN_ITERATIONS:
        raise ValueError(f"n must be >= {LYAPUNOV_MIN_ITERATIONS} for a usable estimate, got {n}")
    total, counted = kernels.lyapunov(params.x0, params.a, params.mode.code, int(n), LYAPUNOV_DELTA0)
    value = total / counted if counted else float("nan")
    return LyapunovEstimate(value=value, iterations=int(n), counted=int(counted))
