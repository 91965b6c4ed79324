from __future__ import annotations

import json

import numpy as np
import pytest

from trapcc import verify as vf
from trapcc.geometry import MutualDistances, TrapezoidConfig, mutual_distances


@pytest.fixture(scope="module")
def reports():
    return vf.run_all(vf.VerifyConfig(samples=2000, seed=5))


def test_registry_ids_unique():
    assert len(set(vf.CLAIM_IDS)) == len(vf.CLAIM_IDS) == 13


def test_all_claims_pass(reports):
    failed = {r.claim_id: r.evidence for r in reports if r.status != vf.PASS}
    assert not failed
    assert vf.all_passed(reports)


def test_reports_are_json_and_seeded(reports):
    doc = json.loads(vf.reports_to_json(reports))
    assert [d["claim_id"] for d in doc] == list(vf.CLAIM_IDS)
    for d in doc:
        assert set(d) == {"claim_id", "location", "quote", "status", "evidence", "seed"}
        assert d["seed"] == 5


def test_same_seed_same_report():
    cfg = vf.VerifyConfig(samples=500, seed=9)
    only = ["lemma-biggest-side", "nonrealizable", "mass-ordering", "oracle-equivalence"]
    a = vf.reports_to_json(vf.run_all(cfg, only))
    b = vf.reports_to_json(vf.run_all(cfg, only))
    assert a == b


def test_zero_samples_skips():
    out = vf.run_all(vf.VerifyConfig(samples=0), ["mu2-maximum"])
    assert out[0].status == vf.SKIPPED


def test_unknown_claim_raises():
    with pytest.raises(KeyError):
        vf.run_all(vf.VerifyConfig(samples=10), ["no-such-claim"])


def test_crashing_check_is_reported_not_raised():
    def boom(cfg):
        raise RuntimeError("kaput")

    claim = vf.Claim("boom", "nowhere", "never", boom)
    rep = vf.run_claim(claim, vf.VerifyConfig(samples=1))
    assert rep.status == vf.FAIL and "kaput" in rep.evidence["error"]


def test_tight_tolerance_reports_failure_without_crashing():
    out = vf.run_all(vf.VerifyConfig(samples=200, tol_surface=1e-30), ["mass-ordering", "right-endpoint-masses"])
    assert all(r.status in (vf.PASS, vf.FAIL) for r in out)
    assert any(r.status == vf.FAIL for r in out)


def test_invalid_config():
    with pytest.raises(ValueError):
        vf.VerifyConfig(samples=-1)
    with pytest.raises(ValueError):
        vf.VerifyConfig(tol_root=0)


def test_well_conditioned_quotients_drop_near_vertical_pairs():
    r = mutual_distances(TrapezoidConfig(1.1, 0.9, 0.1))
    q, dropped = vf.well_conditioned_quotients(r)
    assert len(q) + dropped == 3
    # a square has s1 = s3 and p1 = p3: that pair carries no slope
    q, dropped = vf.well_conditioned_quotients(mutual_distances(TrapezoidConfig(1.0, 1.0, 0.0)))
    assert dropped == 1 and np.allclose(q, q[0], rtol=1e-12)


def test_common_zero_search_finds_only_the_square():
    sols = vf.common_zeros_d_g3(200)
    assert len(sols) == 1
    assert sols[0] == pytest.approx((1.0, 1.0), abs=1e-8)


def test_three_sides_equal_factorization_tight():
    ev = vf._three_sides_equal(np.random.default_rng(0), 200)
    assert ev["max_relative_error"] <= 1e-12
    assert ev["max_cayley_menger"] <= 1e-9


def test_rhombus_distances_vanish_but_parallelogram_does_not():
    from trapcc import dziobeck as dz

    c = -0.3
    k = np.hypot(1.0, c)
    rh = mutual_distances(TrapezoidConfig(k, c + k, c))
    par = mutual_distances(TrapezoidConfig(1.5 * k, c + 1.5 * k, c))
    assert abs(dz.dziobeck_d(rh)) < 1e-13
    assert abs(dz.dziobeck_d(par)) > 1e-6 * par.scale() ** 9
    assert isinstance(rh, MutualDistances)
