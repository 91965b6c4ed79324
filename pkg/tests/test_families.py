from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import cc_masses
from trapcc import dziobeck as dz
from trapcc import families as fam
from trapcc.geometry import TrapezoidClass, TrapezoidConfig, mutual_distances

# frozen from tests/oracle.py: 40-digit Cartesian masses, mpmath.findroot
C1_M2_EQ_M3 = -0.35183935456097735096
C1_M2_EQ_1 = 0.05175959326071488551
C1_M2_MAX_AT = 0.27448350034205601368
C1_M2_MAX = 1.09124766273449732644
# where the m2 = 1 curve crosses C3: the derivative of m2 across C3 vanishes
M2EQ1_ON_C3 = (1.13102016383861074067, 0.89639297494433887418, 0.23462718889427186648)


def _oracle(cfg):
    with mp.workdps(40):
        m2, m3, m4, lam, _ = cc_masses(cfg.a, cfg.b, cfg.c)
    return float(m2), float(m3), float(m4), float(lam)


@pytest.mark.parametrize("c", [-0.5, -0.2, 0.0, 0.3, 0.55])
def test_c1_closed_forms_against_oracle(c):
    cfg, m = fam.curve_c1(c)
    m2, m3, m4, lam = _oracle(cfg)
    assert (m.m2, m.m3, m.m4) == pytest.approx((m2, m3, m4), abs=1e-12)
    assert m.lam == pytest.approx(lam, rel=1e-10)


def test_c1_out_of_range():
    with pytest.raises(fam.OutOfRange):
        fam.curve_c1(fam.INV_SQRT3)


def test_c1_roots_and_maximum():
    assert fam.c1_root(fam.FamilyId.EQUAL_MASS_23) == pytest.approx(C1_M2_EQ_M3, abs=1e-12)
    assert fam.c1_root(fam.FamilyId.EQUAL_MASS_12) == pytest.approx(C1_M2_EQ_1, abs=1e-12)
    c0, mu = fam.maximize_mu2_c1()
    assert c0 == pytest.approx(C1_M2_MAX_AT, abs=1e-8)
    assert mu == pytest.approx(C1_M2_MAX, abs=1e-12)


@pytest.mark.parametrize("c", [-0.5, -0.25, -0.05])
def test_c2_rhombus_masses(c):
    cfg, m = fam.curve_c2(c)
    r = mutual_distances(cfg)
    assert abs(dz.dziobeck_d(r)) <= 1e-13
    assert fam.classify(cfg) is TrapezoidClass.RHOMBUS
    m2, m3, m4, _ = _oracle(cfg)
    assert (m.m2, m.m3, m.m4) == pytest.approx((m2, m3, m4), abs=1e-10)
    assert m.m2 == m.m4 and m.m3 == 1.0


@given(st.floats(0.01, fam.INV_SQRT3 - 0.01))
@settings(max_examples=30, deadline=None)
def test_c3_isosceles_symmetry(c):
    cfg, m = fam.curve_c3(c)
    assert cfg.a == pytest.approx(cfg.b + cfg.c, abs=1e-15)
    r = mutual_distances(cfg)
    assert abs(dz.dziobeck_d(r)) <= 1e-12
    # the reflection y -> a - y swaps bodies 1, 2 and 3, 4
    assert m.m2 == pytest.approx(1.0, abs=1e-9)
    assert m.m3 == pytest.approx(m.m4, abs=1e-9)


@given(st.floats(fam.INV_SQRT3, 1.0))
@settings(max_examples=50, deadline=None)
def test_right_trapezoid_solution(b):
    a = fam.solve_right_trapezoid_a(b)
    assert fam.a2(b) - 1e-15 <= a <= fam.a1(b) + 1e-15
    r = mutual_distances(TrapezoidConfig(a, b, 0.0))
    assert abs(dz.dziobeck_d(r)) <= 1e-11
    assert dz.in_omega_tilde(r, 1e-10)


def test_right_trace_is_continuous_and_monotone():
    tr = fam.trace_right(200)
    a = tr.column("a")
    b = tr.column("b")
    assert b[0] == 1.0 and b[-1] == pytest.approx(fam.INV_SQRT3)
    assert np.all(np.diff(a) > 0)  # a grows as b falls towards 1/sqrt3
    assert np.max(np.abs(np.diff(a))) < 5 * np.max(np.abs(np.diff(b)))


def test_surface_sampling_is_seeded_and_admissible():
    s1 = fam.sample_surface(50, seed=3)
    s2 = fam.sample_surface(50, seed=3)
    assert [s.config for s in s1] == [s.config for s in s2]
    assert [s.config for s in s1] != [s.config for s in fam.sample_surface(50, seed=4)]
    for s in s1:
        assert dz.on_surface(s.distances)
        assert dz.in_omega_tilde(s.distances, 1e-10)
        assert min(s.masses.as_tuple()) >= -1e-12


def test_surface_grid_skips_corners():
    tr = fam.trace_surface(6, 6)
    assert len(tr.samples) > 0
    for s in tr.samples:
        assert all(math.isfinite(x) for x in s.masses.as_tuple())


def test_admissible_intervals_empty_when_r14_too_short():
    assert fam.admissible_a_intervals(0.9, -0.9) == []
    assert fam.solve_surface_a(0.9, -0.9) == []


def test_equal_mass_23_curve_joins_square_to_c1():
    t = fam.trace_equal_mass_curve(fam.FamilyId.EQUAL_MASS_23)
    s = t.trace.samples
    assert t.start_boundary == "P3"
    assert (s[0].config.a, s[0].config.b, s[0].config.c) == pytest.approx(fam.P3, abs=1e-5)
    assert s[-1].config.c == pytest.approx(C1_M2_EQ_M3, abs=1e-9)
    for x in s[1:-1]:
        assert abs(x.masses.m2 - x.masses.m3) <= 1e-8
        assert abs(dz.dziobeck_d(x.distances)) <= 1e-10
    params = t.trace.params()
    assert np.all(np.diff(params) > 0)


def test_equal_mass_12_curve_lands_on_c3_crossing():
    t = fam.trace_equal_mass_curve(fam.FamilyId.EQUAL_MASS_12)
    s = t.trace.samples
    assert t.start_boundary == "C3"
    assert (s[0].config.a, s[0].config.b, s[0].config.c) == pytest.approx(M2EQ1_ON_C3, abs=1e-6)
    assert s[-1].config.c == pytest.approx(C1_M2_EQ_1, abs=1e-9)
    for x in s:
        assert abs(x.masses.m2 - 1.0) <= 1e-8


def test_truncated_continuation_reports_partial(monkeypatch):
    run = fam._PlaneContinuation.run
    monkeypatch.setattr(fam._PlaneContinuation, "run", lambda self, x: run(self, x)[:8])
    with pytest.raises(fam.TraceDiverged) as info:
        fam.trace_equal_mass_curve(fam.FamilyId.EQUAL_MASS_23)
    assert info.value.partial is not None
    assert len(info.value.partial.samples) == 8


def test_not_an_equal_mass_family():
    with pytest.raises(ValueError):
        fam.trace_equal_mass_curve(fam.FamilyId.C1)
