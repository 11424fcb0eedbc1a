# -*- coding: utf-8 -*-
"""
合成行驶序列 - 多窗口圆弧运动下的像素事件轨迹与真值位姿
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from config.constants import SIM_DEPTH_HALFWIDTH, SIM_DEPTH_MEAN, SIM_FOCAL, SIM_IMAGE_WIDTH, SIM_MAX_REJECTIONS
from geometry import AckermannParams, PlanarPose, relative_pose
from pipeline.tracks import CameraIntrinsics, Event, EventTrack
from pipeline.trajectory import TrajectoryPose
from .scene import RejectionExhausted, _visible_bearings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SequenceConfig:
    """
    合成序列配置

    speed 为前向速度（单位/秒）；轨迹只出现在 [margin, duration − margin] 内，
    使覆盖它们的全部窗口都落在真值时间范围内。
    """
    duration: float = 2.0
    omega: float = 0.3
    speed: float = 5.0
    tracks_per_second: float = 40.0
    events_per_track: int = 30
    noise_sigma: float = 0.0
    focal: float = SIM_FOCAL
    width: int = SIM_IMAGE_WIDTH
    height: int = 480
    depth_mean: float = SIM_DEPTH_MEAN
    depth_halfwidth: float = SIM_DEPTH_HALFWIDTH
    min_life: float = 0.16
    max_life: float = 0.24
    gt_rate: float = 200.0
    margin: float = 0.25

    def __post_init__(self):
        if not (self.duration > self.max_life + 2 * self.margin and self.speed > 0 and self.focal > 0):
            raise ValueError("duration 须大于轨迹寿命加两端余量，speed 与 focal 须为正")
        if abs(self.omega) >= math.pi:
            raise ValueError(f"|omega| 须小于 π: {self.omega}")

    @property
    def intrinsics(self) -> CameraIntrinsics:
        return CameraIntrinsics(self.focal, 0.5 * self.width, self.width, self.height)

    def motion(self) -> AckermannParams:
        """τ = 1 s 的圆弧参数，d = speed·sin(ω)/ω"""
        d = self.speed if self.omega == 0 else self.speed * math.sin(self.omega) / self.omega
        return AckermannParams(self.omega, 1.0, d)


@dataclass
class SyntheticSequence:
    tracks: List[EventTrack]
    intrinsics: CameraIntrinsics
    ground_truth: List[TrajectoryPose]
    config: SequenceConfig


def vehicle_pose(config: SequenceConfig, t: float) -> PlanarPose:
    """t 时刻车辆在起点坐标系中的位姿"""
    return relative_pose(config.motion(), t)


def simulate_sequence(config: SequenceConfig, rng: np.random.Generator) -> SyntheticSequence:
    """
    生成合成行驶序列

    Args:
        config: 序列配置
        rng: 随机数生成器

    Returns:
        SyntheticSequence：事件轨迹（寿命在 [min_life, max_life]）、内参与真值位姿

    Raises:
        RejectionExhausted: 某条轨迹的路标无法在寿命内保持可见
    """
    intrinsics = config.intrinsics
    limit = 0.45 * config.width / config.focal
    n_tracks = max(1, int(round(config.duration * config.tracks_per_second)))

    tracks: List[EventTrack] = []
    for index in range(n_tracks):
        life = rng.uniform(config.min_life, config.max_life)
        t_s = rng.uniform(config.margin, config.duration - config.margin - life)
        inner = np.sort(rng.uniform(0.0, life, config.events_per_track - 2))
        times = t_s + np.concatenate([[0.0], inner, [life]])
        poses = [vehicle_pose(config, float(t)) for t in times]

        for _ in range(SIM_MAX_REJECTIONS):
            depth = rng.uniform(config.depth_mean - config.depth_halfwidth, config.depth_mean + config.depth_halfwidth)
            point = poses[0].inverse_transform(rng.uniform(-limit, limit), depth)
            bearings = _visible_bearings(point, poses, limit)
            if bearings is not None:
                break
        else:
            raise RejectionExhausted(f"合成轨迹 {index} 的路标无法保持可见")

        us = intrinsics.pixel(np.asarray(bearings))
        if config.noise_sigma > 0:
            us = us + rng.normal(0.0, config.noise_sigma, us.size)
        us = np.clip(us, 0.0, np.nextafter(float(config.width), 0.0))
        row = rng.uniform(0.0, config.height)
        polarity = int(rng.choice([-1, 1]))
        events = tuple(Event(float(u), float(row), float(t), polarity) for u, t in zip(us, times))
        tracks.append(EventTrack(f"trk{index:04d}", events))

    n_gt = int(math.floor(config.duration * config.gt_rate)) + 1
    gt_times = np.linspace(0.0, (n_gt - 1) / config.gt_rate, n_gt)
    ground_truth = [TrajectoryPose.from_planar(float(t), vehicle_pose(config, float(t))) for t in gt_times]

    logger.info(f"✅ 合成序列: 轨迹={len(tracks)} 时长={config.duration}s ω={config.omega}")
    return SyntheticSequence(tracks, intrinsics, ground_truth, config)
