"""Acceptance criteria, one pass/fail line each.

The lines are printed in the terminal summary (``pytest tests/test_acceptance.py``).
Criteria 1, 3, 4 and 6 compare against values printed alongside the reference
table; the embedded table does not reproduce them, and those checks fail by
design rather than being loosened.  See the README for the measured values.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_keys
import oracles
from sbox_forge import GenConfig, MapParams, chaos, full_report, generate, generate_initial, metrics, reference
from sbox_forge._backend import kernels

TOL_LAP = 1e-4
TOL_SAC = 1e-4
TOL_BIC_SAC = 5e-4
TOL_LYAPUNOV_REL = 0.10
MAX_AGREEMENT = 0.05


def record(number, ok, detail):
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def final():
    return np.asarray(reference.paper_final_sbox())


def test_criterion_1_nl(final):
    t0 = time.perf_counter()
    rep = full_report(final)
    elapsed = time.perf_counter() - t0
    expected = (106, 106, 106, 106, 106, 108, 106, 108)
    ok = rep.nl_per_bit == expected and rep.nl_min == 106 and elapsed < 1.0
    bad = [str(m) for m in reference.audit(reference.fixture("final")) if m.field == "nl_per_bit"]
    record(1, ok, f"nl_per_bit={list(rep.nl_per_bit)} min={rep.nl_min} expected={list(expected)} min=106 "
                  f"report {elapsed:.3f}s bijective={rep.bijective} audit={bad}")


def test_criterion_2_lap(final):
    lap = metrics.lap(final)
    ok = lap == 36 / 256 and abs(lap - 0.1406) <= TOL_LAP
    record(2, ok, f"lap={lap} (36/256=0.140625, printed 0.1406 +-{TOL_LAP})")


def test_criterion_3_dap(final):
    du = metrics.differential_uniformity(final)
    dap = full_report(final).dap_ratio
    ok = du == 10 and dap.num == 10 and dap.den == 256
    record(3, ok, f"differential_uniformity={du} dap={dap} expected 10 and 10/256")


def test_criterion_4_sac(final):
    m, _ = metrics.sac_matrix(final)
    pub = np.array(reference.PUBLISHED_SAC)
    dev = float(np.abs(m - pub).max())
    # 0.5156 is the 4-place print of 33/64
    ok = m[0, 0] == 0.4375 and m[0, 1] == 33 / 64 and dev <= TOL_SAC
    record(4, ok, f"sac(0,0)={m[0, 0]} sac(0,1)={m[0, 1]} expected 0.4375/0.5156; "
                  f"max |computed-printed|={dev:.6f} tol {TOL_SAC}")


def test_criterion_4_diagnostic_column_major_reading(final):
    # reading the printed grid column-major reproduces every printed SAC cell
    transposed = final.reshape(16, 16).T.ravel()
    m, _ = metrics.sac_matrix(transposed)
    dev = float(np.abs(m - np.array(reference.PUBLISHED_SAC)).max())
    assert m[0, 0] == 0.4375 and m[0, 1] == 0.515625
    assert dev <= TOL_SAC
    # NL, uniformity and LAP are invariant under that input-bit permutation
    assert metrics.nonlinearity(transposed) == metrics.nonlinearity(final)
    assert metrics.differential_uniformity(transposed) == metrics.differential_uniformity(final)


def test_criterion_5_bic_sac(final):
    _, avg = metrics.bic_sac(final)
    m, _ = metrics.bic_sac(final)
    cell = float(m[0, 1])
    ok = abs(avg - 0.5066) <= TOL_BIC_SAC and abs(cell - 0.5273) <= TOL_SAC
    record(5, ok, f"bic_sac_avg={avg:.6f} expected 0.5066 +-{TOL_BIC_SAC}; bic_sac(0,1)={cell:.6f}")


def test_criterion_6_fixed_points(final):
    fp = metrics.fixed_points(final)
    record(6, len(fp) == 0, f"fixed points={len(fp)} at {list(fp)} expected 0")


def _small_tables():
    out = []
    ident = list(range(16))
    for i in range(16):
        for j in range(i + 1, 16):
            t = ident.copy()
            t[i], t[j] = t[j], t[i]
            out.append(t)
    rng = np.random.default_rng(2024)
    out += [rng.permutation(16).tolist() for _ in range(100)]
    return out


def test_criterion_7_oracle_equivalence():
    t0 = time.perf_counter()
    tables = _small_tables()
    failures = []
    for t in tables:
        bic_ref = oracles.bic_nl(t)
        bic = metrics.bic_nl_matrix(t)
        checks = {
            "nl": list(metrics.nonlinearity(t)[0]) == oracles.nonlinearity(t),
            "sac": metrics.sac_counts(t).tolist() == oracles.sac_counts(t),
            "bic_nl": all(bic[i, j] == bic_ref[i][j] for i in range(4) for j in range(4) if i != j),
            "bic_sac": metrics.bic_sac_counts(t).tolist() == oracles.bic_sac_counts(t),
            "lat": metrics.lat(t).tolist() == oracles.lat(t),
            "ddt": metrics.ddt(t).tolist() == oracles.ddt(t),
            "degree": list(metrics.algebraic_degree(t)[0]) == oracles.degrees(t),
        }
        failures += [(t, k) for k, v in checks.items() if not v]
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 10.0 and len(tables) == 220
    record(7, ok, f"{len(tables)} tables x 7 metrics, {len(failures)} mismatches, {elapsed:.2f}s (limit 10s)")


_PAR = np.array([bin(v).count("1") & 1 for v in range(256)], dtype=np.int64)


def test_criterion_8_parseval():
    rng = np.random.default_rng(8)
    masks = np.arange(1, 256)
    bad_energy = 0
    bad_balance = 0
    bijective = 0
    for k in range(1000):
        # half permutations, half arbitrary functions
        t = rng.permutation(256) if k % 2 == 0 else rng.integers(0, 256, 256)
        comps = _PAR[masks[:, None] & t[None, :]]
        spec = kernels.walsh(1 - 2 * comps)
        bad_energy += int(np.count_nonzero((spec * spec).sum(axis=1) != 65536))
        if metrics.is_bijective(t):
            bijective += 1
            bad_balance += int(np.count_nonzero(spec[:, 0]))
    ok = bad_energy == 0 and bad_balance == 0 and bijective >= 500
    record(8, ok, f"1000 tables x 255 components: {bad_energy} Parseval violations, "
                  f"{bad_balance} unbalanced components over {bijective} bijective tables")


def test_criterion_9_generation():
    keys = random_keys(1000, 9)
    cfg = GenConfig(refine=True)
    problems = []
    t0 = time.perf_counter()
    for key in keys:
        s = generate_initial(key)
        if sorted(s) != list(range(256)) or generate_initial(key) != s:
            problems.append(("initial", key))
        r = generate(key, cfg)
        if metrics.fixed_points(r) or metrics.nonlinearity(r)[1] < metrics.nonlinearity(s)[1]:
            problems.append(("refine", key))
        if generate(key, cfg) != r:
            problems.append(("determinism", key))
    agree = []
    for key in keys[:100]:
        other = MapParams(key.x0 + 1e-9, key.a, key.b, key.mode)
        a = np.asarray(generate_initial(key))
        b = np.asarray(generate_initial(other))
        agree.append(float((a == b).mean()))
    mean_agree = float(np.mean(agree))
    elapsed = time.perf_counter() - t0
    ok = not problems and mean_agree <= MAX_AGREEMENT
    record(9, ok, f"1000 keys: {len(problems)} failures; mean agreement over 100 dx0=1e-9 pairs "
                  f"{mean_agree:.4f} (limit {MAX_AGREEMENT}); {elapsed:.1f}s")


def test_criterion_10_chaos():
    p = MapParams(0.33, 1.0, 1.0, "alg1")
    short = chaos.lyapunov(p, 100_000)
    long = chaos.lyapunov(p, 200_000)
    rel = abs(long.value - short.value) / abs(short.value)
    scan = chaos.bifurcation_scan(0.1, 1.9, 400, 0.33, 100, transient=1000)
    rows = scan.to_csv().splitlines()
    xs = np.array([float(r.split(",")[1]) for r in rows[1:]])
    ok = (short.value > 0 and rel < TOL_LYAPUNOV_REL and rows[0] == "a,x"
          and len(rows) - 1 == 400 * 100 and xs.min() >= 0 and xs.max() < 1)
    record(10, ok, f"lyapunov n=1e5 {short.value:.4f}, n=2e5 {long.value:.4f}, rel change {rel:.4f} "
                   f"(limit {TOL_LYAPUNOV_REL}); csv rows {len(rows) - 1} (expected 40000), x in [{xs.min():.6f}, {xs.max():.6f}]")


def test_criterion_11_bench():
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "sbox_forge", "bench", "--count", "100000", "--json"],
        capture_output=True, text=True, timeout=900,
    )
    elapsed = time.perf_counter() - t0
    ok = proc.returncode == 0
    detail = proc.stderr.strip().splitlines()[-1:] if not ok else ""
    if ok:
        doc = json.loads(proc.stdout)
        ok = doc["count"] == 100_000
        detail = (f"{doc['count']} initial S-boxes ({doc['distinct']} distinct) in "
                  f"{doc['initial_total_s']:.2f}s, mean {doc['initial_mean_us']:.1f}us, "
                  f"backend {doc['backend']} (informational; wall {elapsed:.1f}s)")
    record(11, ok, str(detail))
