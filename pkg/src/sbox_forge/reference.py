"""Published S-box tables and metric values used as regression fixtures.

The source prints a single 16x16 table (row-major, rows = high nibble). It
is labelled both as the initial and the final S-box, so both accessors return
it. The published metrics are attached to the final fixture verbatim.

:func:`audit` compares a fixture's computed metrics with the published ones
and lists every disagreeing cell. :func:`check` does the same in strict mode
and raises on the first report with mismatches.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from types import MappingProxyType
from typing import Any, List, Mapping, Optional, Tuple

import numpy as np

from .errors import SBoxForgeError
from .metrics import MetricsReport, full_report
from .tables import RawTable


class TranscriptionError(SBoxForgeError):
    """A data file disagrees with its row checksums."""


class FixtureMismatch(SBoxForgeError):
    """Strict-mode fixture check found disagreeing metrics."""

    def __init__(self, fixture: str, mismatches: List["Mismatch"]):
        self.fixture = fixture
        self.mismatches = mismatches
        lines = "\n".join(f"  {m}" for m in mismatches)
        super().__init__(f"fixture {fixture!r}: {len(mismatches)} mismatch(es)\n{lines}")


# 4-decimal figures are rounded, so anything within half a unit of the last digit agrees
PRINTED_TOL = 0.00005

PUBLISHED_NL = (106, 106, 106, 106, 106, 108, 106, 108)
PUBLISHED_LAP = 0.1406
PUBLISHED_BIC_SAC_AVG = 0.5066
PUBLISHED_FIXED_POINTS = 0
PUBLISHED_DIFF_UNIFORMITY = 10

PUBLISHED_SAC = (
    (0.4375, 0.5156, 0.5313, 0.4531, 0.4531, 0.5313, 0.5313, 0.5000),
    (0.5156, 0.4219, 0.5000, 0.4688, 0.4688, 0.4844, 0.5156, 0.5313),
    (0.5469, 0.5469, 0.4688, 0.5313, 0.5469, 0.5469, 0.4531, 0.5313),
    (0.5156, 0.5313, 0.5938, 0.4844, 0.5313, 0.5156, 0.5313, 0.4531),
    (0.4531, 0.5469, 0.5000, 0.5000, 0.5000, 0.5469, 0.5469, 0.5156),
    (0.4531, 0.5156, 0.5156, 0.5000, 0.5156, 0.5000, 0.5781, 0.5469),
    (0.4688, 0.5625, 0.5469, 0.5000, 0.5625, 0.4531, 0.5156, 0.4375),
    (0.4844, 0.4375, 0.4531, 0.4531, 0.5313, 0.5938, 0.4531, 0.5469),
)

PUBLISHED_BIC_SAC = (
    (0.0000, 0.5273, 0.5156, 0.4980, 0.5039, 0.5176, 0.5234, 0.5000),
    (0.5273, 0.0000, 0.5000, 0.5137, 0.4727, 0.4980, 0.5215, 0.5020),
    (0.5156, 0.5000, 0.0000, 0.4844, 0.5020, 0.4844, 0.5078, 0.4922),
    (0.4980, 0.5137, 0.4844, 0.0000, 0.5176, 0.5000, 0.5254, 0.4883),
    (0.5039, 0.4727, 0.5020, 0.5176, 0.0000, 0.5156, 0.5000, 0.5254),
    (0.5176, 0.4980, 0.4844, 0.5000, 0.5156, 0.0000, 0.5156, 0.5117),
    (0.5234, 0.5215, 0.5078, 0.5254, 0.5000, 0.5156, 0.0000, 0.5195),
    (0.5000, 0.5020, 0.4922, 0.4883, 0.5254, 0.5117, 0.5195, 0.0000),
)

AES_SBOX = (
    0x63, 0x7C, 0x77, 0x7B, 0xF2, 0x6B, 0x6F, 0xC5, 0x30, 0x01, 0x67, 0x2B, 0xFE, 0xD7, 0xAB, 0x76,
    0xCA, 0x82, 0xC9, 0x7D, 0xFA, 0x59, 0x47, 0xF0, 0xAD, 0xD4, 0xA2, 0xAF, 0x9C, 0xA4, 0x72, 0xC0,
    0xB7, 0xFD, 0x93, 0x26, 0x36, 0x3F, 0xF7, 0xCC, 0x34, 0xA5, 0xE5, 0xF1, 0x71, 0xD8, 0x31, 0x15,
    0x04, 0xC7, 0x23, 0xC3, 0x18, 0x96, 0x05, 0x9A, 0x07, 0x12, 0x80, 0xE2, 0xEB, 0x27, 0xB2, 0x75,
    0x09, 0x83, 0x2C, 0x1A, 0x1B, 0x6E, 0x5A, 0xA0, 0x52, 0x3B, 0xD6, 0xB3, 0x29, 0xE3, 0x2F, 0x84,
    0x53, 0xD1, 0x00, 0xED, 0x20, 0xFC, 0xB1, 0x5B, 0x6A, 0xCB, 0xBE, 0x39, 0x4A, 0x4C, 0x58, 0xCF,
    0xD0, 0xEF, 0xAA, 0xFB, 0x43, 0x4D, 0x33, 0x85, 0x45, 0xF9, 0x02, 0x7F, 0x50, 0x3C, 0x9F, 0xA8,
    0x51, 0xA3, 0x40, 0x8F, 0x92, 0x9D, 0x38, 0xF5, 0xBC, 0xB6, 0xDA, 0x21, 0x10, 0xFF, 0xF3, 0xD2,
    0xCD, 0x0C, 0x13, 0xEC, 0x5F, 0x97, 0x44, 0x17, 0xC4, 0xA7, 0x7E, 0x3D, 0x64, 0x5D, 0x19, 0x73,
    0x60, 0x81, 0x4F, 0xDC, 0x22, 0x2A, 0x90, 0x88, 0x46, 0xEE, 0xB8, 0x14, 0xDE, 0x5E, 0x0B, 0xDB,
    0xE0, 0x32, 0x3A, 0x0A, 0x49, 0x06, 0x24, 0x5C, 0xC2, 0xD3, 0xAC, 0x62, 0x91, 0x95, 0xE4, 0x79,
    0xE7, 0xC8, 0x37, 0x6D, 0x8D, 0xD5, 0x4E, 0xA9, 0x6C, 0x56, 0xF4, 0xEA, 0x65, 0x7A, 0xAE, 0x08,
    0xBA, 0x78, 0x25, 0x2E, 0x1C, 0xA6, 0xB4, 0xC6, 0xE8, 0xDD, 0x74, 0x1F, 0x4B, 0xBD, 0x8B, 0x8A,
    0x70, 0x3E, 0xB5, 0x66, 0x48, 0x03, 0xF6, 0x0E, 0x61, 0x35, 0x57, 0xB9, 0x86, 0xC1, 0x1D, 0x9E,
    0xE1, 0xF8, 0x98, 0x11, 0x69, 0xD9, 0x8E, 0x94, 0x9B, 0x1E, 0x87, 0xE9, 0xCE, 0x55, 0x28, 0xDF,
    0x8C, 0xA1, 0x89, 0x0D, 0xBF, 0xE6, 0x42, 0x68, 0x41, 0x99, 0x2D, 0x0F, 0xB0, 0x54, 0xBB, 0x16,
)


def _read(name: str) -> str:
    return resources.files("sbox_forge.data").joinpath(name).read_text(encoding="utf-8")


def load_table_file(stem: str) -> Tuple[RawTable, List[Tuple[int, int, int]]]:
    """Read ``<stem>.txt`` and verify it against ``<stem>.rowsums``.

    Returns the table and the list of (row, expected_sum, actual_sum) for rows
    that disagree; a clean transcription yields an empty list.
    """
    rows = [[int(v) for v in line.split()] for line in _read(f"{stem}.txt").splitlines() if line.strip()]
    if len(rows) != 16 or any(len(r) != 16 for r in rows):
        raise TranscriptionError(f"{stem}.txt must hold 16 rows of 16 values")
    bad = []
    for line in _read(f"{stem}.rowsums").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        idx, total, first, last = (int(v) for v in line.split())
        row = rows[idx]
        if sum(row) != total or row[0] != first or row[-1] != last:
            bad.append((idx, total, sum(row)))
    return RawTable(np.array(rows).ravel()), bad


@lru_cache(maxsize=None)
def _reference_table() -> RawTable:
    table, bad = load_table_file("reference_sbox")
    if bad:
        raise TranscriptionError(f"reference_sbox.txt fails its row checksums: {bad}")
    return table


def paper_final_sbox() -> RawTable:
    return _reference_table()


def paper_initial_sbox() -> RawTable:
    return _reference_table()


def aes_sbox() -> RawTable:
    return RawTable(AES_SBOX)


@dataclass(frozen=True)
class Mismatch:
    field: str
    cell: Optional[Tuple[int, ...]]
    expected: Any
    actual: Any

    def __str__(self):
        where = self.field if self.cell is None else f"{self.field}{list(self.cell)}"
        return f"{where}: published {self.expected}, computed {self.actual}"


@dataclass(frozen=True)
class ReferenceFixture:
    name: str
    table: RawTable
    expected: Mapping[str, Any] = field(default_factory=lambda: MappingProxyType({}))


def fixtures() -> List[ReferenceFixture]:
    final = ReferenceFixture(
        name="final",
        table=paper_final_sbox(),
        expected=MappingProxyType({
            "nl_per_bit": PUBLISHED_NL,
            "lap": PUBLISHED_LAP,
            "bic_sac_avg": PUBLISHED_BIC_SAC_AVG,
            "fixed_point_count": PUBLISHED_FIXED_POINTS,
            "differential_uniformity": PUBLISHED_DIFF_UNIFORMITY,
            "sac": PUBLISHED_SAC,
            "bic_sac": PUBLISHED_BIC_SAC,
        }),
    )
    initial = ReferenceFixture(name="initial", table=paper_initial_sbox())
    return [final, initial]


def fixture(name: str) -> ReferenceFixture:
    for fx in fixtures():
        if fx.name == name:
            return fx
    raise KeyError(f"unknown fixture {name!r}")


def audit(fx: ReferenceFixture, report: MetricsReport = None, tol: float = PRINTED_TOL) -> List[Mismatch]:
    """Every published value of ``fx`` that the computed report disagrees with."""
    report = report if report is not None else full_report(fx.table)
    out = []
    exp = fx.expected
    if "nl_per_bit" in exp:
        for i, (e, a) in enumerate(zip(exp["nl_per_bit"], report.nl_per_bit)):
            if e != a:
                out.append(Mismatch("nl_per_bit", (i,), e, a))
    for key in ("fixed_point_count", "differential_uniformity"):
        if key in exp and exp[key] != getattr(report, key):
            out.append(Mismatch(key, None, exp[key], getattr(report, key)))
    for key in ("lap", "bic_sac_avg"):
        if key in exp:
            a = getattr(report, key)
            if abs(a - exp[key]) > tol:
                out.append(Mismatch(key, None, exp[key], round(a, 6)))
    for key in ("sac", "bic_sac"):
        if key in exp:
            computed = getattr(report, key)
            for (i, j), e in np.ndenumerate(np.array(exp[key])):
                a = float(computed[i, j])
                if abs(a - e) > tol:
                    out.append(Mismatch(key, (i, j), e, round(a, 6)))
    return out


def check(fx: ReferenceFixture, strict: bool = True, tol: float = PRINTED_TOL) -> List[Mismatch]:
    """Strict mode raises :class:`FixtureMismatch`; audit mode returns the list."""
    mismatches = audit(fx, tol=tol)
    if strict and mismatches:
        raise FixtureMismatch(fx.name, mismatches)
    return mismatches
