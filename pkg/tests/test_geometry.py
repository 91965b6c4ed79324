from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trapcc.geometry import (
    InvalidConfig,
    TrapezoidClass,
    TrapezoidConfig,
    cayley_menger,
    classify,
    classify_points,
    distance_arrays,
    distances_from_points,
    mutual_distances,
    oriented_areas,
    positions_from_config,
)

SQ3 = math.sqrt(3.0)

configs = st.builds(
    lambda a, b, gap: (a, b, b - gap),
    st.floats(1.0, 3.0),
    st.floats(-2.0, 3.0),
    st.floats(0.05, 3.0),
)


def test_invalid_configs_rejected():
    with pytest.raises(InvalidConfig):
        TrapezoidConfig(0.5, 1.0, 0.0)
    with pytest.raises(InvalidConfig):
        TrapezoidConfig(1.0, 0.0, 0.0)
    with pytest.raises(InvalidConfig):
        TrapezoidConfig(float("nan"), 1.0, 0.0)


def test_square_distances():
    r = mutual_distances(TrapezoidConfig(1.0, 1.0, 0.0))
    assert r.as_tuple() == pytest.approx((1.0, math.sqrt(2), 1.0, 1.0, math.sqrt(2), 1.0), abs=1e-15)


@given(configs)
def test_distances_match_points(abc):
    cfg = TrapezoidConfig(*abc)
    a = mutual_distances(cfg).as_tuple()
    b = distances_from_points(positions_from_config(cfg)).as_tuple()
    assert np.allclose(a, b, rtol=1e-14, atol=0)
    c = distance_arrays(*abc).as_tuple()
    assert np.allclose(a, [float(x) for x in c], rtol=1e-15, atol=0)


@given(configs)
@settings(max_examples=50)
def test_cayley_menger_vanishes_for_planar_points(abc):
    r = mutual_distances(TrapezoidConfig(*abc))
    assert abs(cayley_menger(r)) <= 1e-9 * r.scale() ** 6


def test_cayley_menger_positive_for_tetrahedron():
    # regular tetrahedron with unit edges: 288 V^2 = 288 / 72 = 4
    r = distances_from_points([(0, 0), (1, 0), (0.5, SQ3 / 2), (0.5, SQ3 / 6)])
    from trapcc.geometry import MutualDistances

    tet = MutualDistances(1, 1, 1, 1, 1, 1)
    assert cayley_menger(tet) == pytest.approx(4.0, rel=1e-12)
    assert abs(cayley_menger(r)) < 1e-12


@given(configs)
def test_oriented_areas_sum_to_zero(abc):
    d = oriented_areas(positions_from_config(TrapezoidConfig(*abc)))
    assert abs(d.total()) <= 1e-12 * (1 + max(map(abs, abc))) ** 2


@given(configs)
def test_relabel_is_an_involution(abc):
    cfg = TrapezoidConfig(*abc)
    back = cfg.relabeled().relabeled()
    assert (back.a, back.b, back.c) == pytest.approx(abc, abs=1e-12)


@pytest.mark.parametrize(
    "abc, label",
    [
        ((1.0, 1.0, 0.0), TrapezoidClass.SQUARE),
        ((2.0, 2.0, 0.0), TrapezoidClass.RECTANGLE),
        ((2 / SQ3, 1 / SQ3 + 2 / SQ3, 1 / SQ3), TrapezoidClass.RHOMBUS),
        ((1.5, 2.0, 0.5), TrapezoidClass.PARALLELOGRAM),
        ((2.0, 1.5, 0.5), TrapezoidClass.ISOSCELES),
        ((2 / SQ3, 1 / SQ3, 0.0), TrapezoidClass.RIGHT),
        ((2 / SQ3, 1 / SQ3, 1 / SQ3 - 1e-3), TrapezoidClass.ACUTE),
        ((1.2, 1.0, -0.3), TrapezoidClass.OBTUSE),
        ((1.0, 0.5, 0.5 - 1e-12), TrapezoidClass.NON_TRAPEZOID),
    ],
)
def test_classify_known_shapes(abc, label):
    assert classify(TrapezoidConfig(*abc)) is label


def test_three_sides_equal_on_isosceles_family():
    # legs 1, short base 1: a = b + c with b - c = r34 and r14 = r34
    c = 1 / SQ3
    b = c + math.sqrt(1 + c * c)
    assert classify(TrapezoidConfig(b + c, b, c)) is TrapezoidClass.THREE_SIDES_EQUAL


def test_classify_rejects_nonconvex_and_collinear():
    assert classify_points([(0, 0), (0, 1), (1, 1), (1, 1)]) is TrapezoidClass.NON_TRAPEZOID
    # self-intersecting ordering
    assert classify_points([(0, 0), (1, 1), (0, 1), (1, 0)]) is TrapezoidClass.NON_TRAPEZOID
    # convex but no parallel sides
    assert classify_points([(0, 0), (0, 1), (1, 2), (1.3, -0.5)]) is TrapezoidClass.NON_TRAPEZOID
