# -*- coding: utf-8 -*-
"""阿克曼运动学"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geometry import (
    AckermannParams,
    DegenerateScale,
    PlanarPose,
    PointBehindCamera,
    WorldPoint2D,
    exact_incidence_matrix,
    exact_incidence_row,
    project_bearing,
    relative_pose,
)


def test_straight_motion_is_pure_forward():
    pose = relative_pose(AckermannParams(0.0, 1.0, 2.0), 0.5)
    assert pose.rotation == 0.0
    assert pose.translation == pytest.approx((0.0, 1.0))


def test_full_window_reaches_forward_displacement_d():
    params = AckermannParams(0.4, 0.25, 1.5)
    pose = relative_pose(params, params.tau)
    theta = params.turn
    assert pose.rotation == pytest.approx(theta)
    assert pose.translation[1] == pytest.approx(1.5)
    assert pose.translation[0] == pytest.approx(1.5 * math.tan(theta / 2))


def test_right_turn_moves_right():
    pose = relative_pose(AckermannParams(0.5, 1.0), 1.0)
    assert pose.translation[0] > 0
    pose = relative_pose(AckermannParams(-0.5, 1.0), 1.0)
    assert pose.translation[0] < 0


def test_turn_radius():
    assert AckermannParams(0.0, 1.0).radius == math.inf
    params = AckermannParams(0.4, 0.5, 2.0)
    pose = relative_pose(params, 0.5)
    assert pose.translation[0] == pytest.approx(params.radius * (1.0 - math.cos(0.2)))
    assert pose.translation[1] == pytest.approx(params.radius * math.sin(0.2))


def test_invalid_params():
    with pytest.raises(ValueError):
        AckermannParams(0.1, 0.0)
    with pytest.raises(ValueError):
        AckermannParams(0.1, 1.0, -1.0)
    with pytest.raises(ValueError):
        relative_pose(AckermannParams(0.1, 1.0), -0.1)


def test_half_turn_is_degenerate():
    params = AckermannParams(math.pi, 1.0)
    with pytest.raises(DegenerateScale):
        relative_pose(params, 0.5)
    with pytest.raises(DegenerateScale):
        exact_incidence_row(0.1, 0.5, params)


def test_compose_two_half_arcs():
    params = AckermannParams(0.7, 0.4, 1.2)
    half = relative_pose(params, 0.2)
    full = relative_pose(params, 0.4)
    chained = half.compose(half)
    assert chained.rotation == pytest.approx(full.rotation)
    np.testing.assert_allclose(chained.translation, full.translation, atol=1e-12)


def test_identity_compose():
    pose = PlanarPose(0.3, (1.0, 2.0))
    chained = PlanarPose.identity().compose(pose)
    assert chained == pose


def test_point_behind_camera():
    with pytest.raises(PointBehindCamera):
        project_bearing(WorldPoint2D(0.0, -1.0), PlanarPose.identity())


@settings(max_examples=60, deadline=None)
@given(
    omega=st.floats(-1.0, 1.0),
    tau_i=st.floats(0.0, 0.3),
    px=st.floats(-3.0, 3.0),
    py=st.floats(4.0, 20.0),
)
def test_incidence_row_vanishes_on_true_structure(omega, tau_i, px, py):
    params = AckermannParams(omega, 0.3, 1.0)
    pose = relative_pose(params, tau_i)
    x = project_bearing(WorldPoint2D(px, py), pose)
    row = exact_incidence_row(x, tau_i, params)
    scale = max(1.0, abs(px), abs(py))
    assert abs(np.dot(row, (px, py, params.d))) <= 1e-9 * scale


@settings(max_examples=60, deadline=None)
@given(
    rotation=st.floats(-1.0, 1.0),
    tx=st.floats(-2.0, 2.0),
    ty=st.floats(-2.0, 2.0),
    bearing=st.floats(-0.5, 0.5),
    depth=st.floats(1.0, 30.0),
)
def test_unproject_then_project(rotation, tx, ty, bearing, depth):
    pose = PlanarPose(rotation, (tx, ty))
    point = pose.inverse_transform(bearing, depth)
    assert project_bearing(point, pose) == pytest.approx(bearing, abs=1e-9)


def test_limit_branch_is_continuous():
    a = exact_incidence_row(0.2, 0.1, AckermannParams(1e-9, 0.25))
    b = exact_incidence_row(0.2, 0.1, AckermannParams(1e-6, 0.25))
    np.testing.assert_allclose(a, b, atol=1e-6)


def test_incidence_matrix_matches_rows():
    params = AckermannParams(0.35, 0.25)
    xs = [-0.2, 0.05, 0.3]
    taus = [0.0, 0.1, 0.25]
    stacked = exact_incidence_matrix(xs, taus, params)
    expected = np.array([exact_incidence_row(x, t, params) for x, t in zip(xs, taus)])
    np.testing.assert_allclose(stacked, expected, rtol=1e-12, atol=1e-15)
