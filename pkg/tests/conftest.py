# -*- coding: utf-8 -*-
"""测试公共夹具"""

from __future__ import annotations

import numpy as np
import pytest

from geometry import AckermannParams, WorldPoint2D, project_bearing, relative_pose
from pipeline.tracks import CameraIntrinsics
from solver import BearingSample, OmegaEstimate


def bearing_track(omega, window=0.25, n=30, point=(0.5, 4.0), d=1.0, tau=None):
    """等间隔采样的无噪声方位轨迹，运动圆弧由 (ω, window, d) 决定"""
    motion = AckermannParams(omega, window, d)
    landmark = WorldPoint2D(*point)
    taus = np.linspace(0.0, window, n)
    return [BearingSample(project_bearing(landmark, relative_pose(motion, float(t))), float(t)) for t in taus]


def injected(omegas, prefix="t"):
    """不带目标多项式的注入估计"""
    return [OmegaEstimate(float(w), 0.0, 2, track_id=f"{prefix}{i:02d}") for i, w in enumerate(omegas)]


@pytest.fixture
def make_track():
    return bearing_track


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def intrinsics():
    return CameraIntrinsics(focal=700.0, principal_x=320.0, width=640, height=480)
