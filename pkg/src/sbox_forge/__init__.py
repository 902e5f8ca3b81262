"""Key-dependent 8-bit S-boxes from a trigonometric chaotic map, with a full metrics suite."""

from .chaos import (
    BifurcationRecord,
    BifurcationScan,
    ChaosState,
    Intermediates,
    LyapunovEstimate,
    MapParams,
    Mode,
    bifurcation_scan,
    intermediates,
    lyapunov,
    step,
    trajectory,
)
from .errors import GenerationStalled, InvalidTableError, RefinementFailed, SBoxForgeError
from .generate import GenConfig, generate, generate_initial, generate_initial_batch, refine
from .metrics import MetricsReport, Ratio, full_report
from .tables import RawTable, SBox

__version__ = "0.1.0"

__all__ = [
    "BifurcationRecord",
    "BifurcationScan",
    "ChaosState",
    "GenConfig",
    "GenerationStalled",
    "Intermediates",
    "InvalidTableError",
    "LyapunovEstimate",
    "MapParams",
    "MetricsReport",
    "Mode",
    "Ratio",
    "RawTable",
    "RefinementFailed",
    "SBox",
    "SBoxForgeError",
    "bifurcation_scan",
    "full_report",
    "generate",
    "generate_initial",
    "generate_initial_batch",
    "intermediates",
    "lyapunov",
    "refine",
    "step",
    "trajectory",
]
