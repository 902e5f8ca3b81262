import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sbox_forge import full_report, metrics
from sbox_forge.errors import InvalidTableError
from sbox_forge.reference import aes_sbox


def small_tables():
    ident = list(range(16))
    out = []
    for i, j in itertools.combinations(range(16), 2):
        t = ident.copy()
        t[i], t[j] = t[j], t[i]
        out.append(t)
    rng = np.random.default_rng(4)
    out += [rng.permutation(16).tolist() for _ in range(100)]
    return out


SMALL = small_tables()


def test_small_table_count():
    assert len(SMALL) == 220


def test_oracle_nonlinearity_small():
    for t in SMALL:
        per_bit, nl_min = metrics.nonlinearity(t)
        assert list(per_bit) == oracles.nonlinearity(t)
        assert nl_min == min(per_bit)


def test_oracle_sac_small():
    for t in SMALL:
        assert metrics.sac_counts(t).tolist() == oracles.sac_counts(t)


def test_oracle_bic_small():
    for t in SMALL:
        m, _ = metrics.bic_nl(t)
        ref = oracles.bic_nl(t)
        for i, j in itertools.permutations(range(4), 2):
            assert m[i, j] == ref[i][j]
        assert metrics.bic_sac_counts(t).tolist() == oracles.bic_sac_counts(t)


def test_oracle_lat_ddt_small():
    for t in SMALL:
        assert metrics.lat(t).tolist() == oracles.lat(t)
        assert metrics.ddt(t).tolist() == oracles.ddt(t)


def test_oracle_degree_small():
    for t in SMALL:
        assert list(metrics.algebraic_degree(t)[0]) == oracles.degrees(t)


def test_walsh_matches_direct_sum(rng):
    for _ in range(3):
        f = rng.integers(0, 2, 256)
        assert metrics.walsh_spectrum(f).tolist() == oracles.walsh(f.tolist())


def test_walsh_trivial_spectra():
    spec = metrics.walsh_spectrum(np.zeros(256, dtype=int))
    assert spec[0] == 256 and not spec[1:].any()
    lin = metrics.walsh_spectrum(np.arange(256) & 1)
    assert lin[1] == 256 and np.count_nonzero(lin) == 1


def test_anf_matches_oracle(rng):
    f = rng.integers(0, 2, 256)
    assert metrics.anf(f).tolist() == oracles.anf(f.tolist())


def test_component_truth_table(rng, identity):
    s = rng.permutation(256)
    assert not metrics.component_truth_table(s, 0).any()
    np.testing.assert_array_equal(metrics.component_truth_table(identity, 1), identity & 1)
    np.testing.assert_array_equal(
        metrics.component_truth_table(s, 3),
        metrics.component_truth_table(s, 1) ^ metrics.component_truth_table(s, 2),
    )


def test_aes_cross_check():
    rep = full_report(aes_sbox())
    assert rep.nl_per_bit == (112,) * 8
    assert rep.algebraic_degree_per_bit == (7,) * 8
    assert rep.differential_uniformity == 4
    assert rep.lap_ratio.num == 16
    assert rep.fixed_point_count == 0
    assert rep.bic_nl_min == 112


def test_identity_report(identity):
    rep = full_report(identity)
    assert rep.bijective
    assert rep.nl_min == 0
    assert rep.lap == 0.5
    assert rep.dap == 1.0
    assert rep.fixed_point_count == 256
    np.testing.assert_array_equal(rep.sac, np.eye(8))
    off = ~np.eye(8, dtype=bool)
    assert np.all(rep.bic_nl[off] == 0)
    assert np.all(rep.bic_sac[off] == 0.25)
    assert np.all(np.diag(rep.bic_sac) == 0)
    assert rep.algebraic_degree_per_bit == (1,) * 8


def test_non_bijective_is_analyzed():
    rep = full_report(np.zeros(256, dtype=int))
    assert not rep.bijective
    assert rep.nl_min == 0
    assert rep.algebraic_degree_per_bit == (0,) * 8
    assert not metrics.is_bijective([0] * 256)


def test_structural_invariants(rng):
    for _ in range(5):
        s = rng.permutation(256)
        lat = metrics.lat(s)
        ddt = metrics.ddt(s)
        assert lat[0, 0] == 128 and ddt[0, 0] == 256
        assert np.all(ddt.sum(axis=1) == 256)
        assert np.all(ddt % 2 == 0)
        rep = full_report(s)
        assert np.array_equal(rep.bic_nl, rep.bic_nl.T)
        assert np.array_equal(rep.bic_sac_counts, rep.bic_sac_counts.T)
        assert 0 <= rep.lap <= 0.5 and 0 < rep.dap <= 1
        assert rep.differential_uniformity % 2 == 0
        assert all(0 <= v <= 120 for v in rep.nl_per_bit)


def test_exact_denominators(rng):
    rep = full_report(rng.permutation(256))
    assert rep.lap_ratio.den == 256 and rep.dap_ratio.den == 256
    # balanced coordinates flip in an even number of the 128 pairs, so counts are 0 mod 4
    assert rep.sac_counts.dtype.kind == "i"
    assert np.all(rep.sac_counts % 4 == 0)


def test_json_report_shape(rng):
    doc = full_report(rng.permutation(256)).to_json()
    assert list(doc) == sorted(doc)
    assert doc["lap"]["exact"].endswith("/256")
    assert doc["sac"][0][0]["exact"].endswith("/256")
    assert doc["bic_nl"][3][3] is None
    json.dumps(doc)


def test_rejects_bad_tables():
    with pytest.raises(InvalidTableError):
        metrics.nonlinearity([0, 1, 2])
    with pytest.raises(InvalidTableError):
        metrics.ddt([0, 1, 2, 4])
    with pytest.raises(InvalidTableError):
        metrics.full_report(np.arange(256).reshape(16, 16))


def test_parseval_guard_fires():
    with pytest.raises(AssertionError):
        metrics._spectra(np.array([[0, 1, 2, 0]]))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.integers(1, 255))
def test_input_xor_invariance(seed, c):
    s = np.random.default_rng(seed).permutation(256)
    shifted = s[np.arange(256) ^ c]
    assert metrics.nonlinearity(shifted) == metrics.nonlinearity(s)
    assert metrics.differential_uniformity(shifted) == metrics.differential_uniformity(s)
    assert metrics.lap(shifted) == metrics.lap(s)
