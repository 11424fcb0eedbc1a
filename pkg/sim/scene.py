# -*- coding: utf-8 -*-
"""
合成场景 - 随机路标、圆弧运动下的方位轨迹与像素噪声
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from config.constants import (
    SIM_DEPTH_HALFWIDTH,
    SIM_DEPTH_MEAN,
    SIM_EVENTS_PER_TRACK,
    SIM_FOCAL,
    SIM_IMAGE_WIDTH,
    SIM_MAX_REJECTIONS,
    SIM_N_LANDMARKS,
    SIM_NOISE_SIGMA,
    SIM_OMEGA_RANGE,
    SIM_SEED,
    SIM_TRIALS,
    SIM_WINDOW,
)
from geometry import AckermannParams, PointBehindCamera, WorldPoint2D, project_bearing, relative_pose
from solver import BearingSample

logger = logging.getLogger(__name__)


class RejectionExhausted(RuntimeError):
    """路标可见性拒绝采样次数耗尽"""
    pass


@dataclass(frozen=True)
class SceneConfig:
    """
    仿真场景配置

    d 为整个窗口内的前向位移（定义运动圆弧），tau 为求解器的尺度时间常数，
    默认与窗口长度相同。
    """
    n_landmarks: int = SIM_N_LANDMARKS
    depth_mean: float = SIM_DEPTH_MEAN
    depth_halfwidth: float = SIM_DEPTH_HALFWIDTH
    noise_sigma: float = SIM_NOISE_SIGMA
    window: float = SIM_WINDOW
    focal: float = SIM_FOCAL
    image_width: int = SIM_IMAGE_WIDTH
    events_per_track: int = SIM_EVENTS_PER_TRACK
    omega_true: Optional[float] = None
    tau: Optional[float] = None
    d: float = 1.0
    trials: int = SIM_TRIALS
    seed: int = SIM_SEED

    def __post_init__(self):
        if self.depth_mean - self.depth_halfwidth <= 0:
            raise ValueError(
                f"深度区间必须在相机前方: mean={self.depth_mean}, halfwidth={self.depth_halfwidth}"
            )
        if self.n_landmarks < 1 or self.events_per_track < 3:
            raise ValueError("至少需要 1 个路标、每条轨迹至少 3 个事件")
        if not (self.window > 0 and self.focal > 0 and self.d > 0):
            raise ValueError("window、focal、d 必须为正")
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma 不能为负: {self.noise_sigma}")
        if self.tau is not None and not self.tau > 0:
            raise ValueError(f"tau 必须为正: {self.tau}")
        if self.trials < 1:
            raise ValueError(f"trials 至少为 1: {self.trials}")

    @property
    def solver_tau(self) -> float:
        return self.window if self.tau is None else self.tau

    @property
    def bearing_limit(self) -> float:
        """可见方位锥半宽 0.5·width/focal"""
        return 0.5 * self.image_width / self.focal


@dataclass(frozen=True)
class SyntheticTrack:
    """单个路标的合成方位轨迹"""
    samples: List[BearingSample]
    landmark: WorldPoint2D
    omega_true: float
    exact_bearings: List[float] = field(default_factory=list, repr=False)


def _visible_bearings(point: WorldPoint2D, poses, limit: float) -> Optional[List[float]]:
    bearings = []
    for pose in poses:
        try:
            x = project_bearing(point, pose)
        except PointBehindCamera:
            return None
        if abs(x) > limit:
            return None
        bearings.append(x)
    return bearings


def generate_scene(config: SceneConfig, rng: np.random.Generator) -> List[SyntheticTrack]:
    """
    生成一个场景的全部路标轨迹

    Args:
        config: 场景配置
        rng: 随机数生成器

    Returns:
        n_landmarks 条轨迹，每条 events_per_track 个样本

    Raises:
        RejectionExhausted: 某个路标连续 1000 次不满足全窗口可见
    """
    omega = config.omega_true
    if omega is None:
        omega = float(rng.uniform(-SIM_OMEGA_RANGE, SIM_OMEGA_RANGE))
    motion = AckermannParams(omega, config.window, config.d)
    limit = config.bearing_limit

    tracks: List[SyntheticTrack] = []
    for landmark_index in range(config.n_landmarks):
        taus = np.sort(rng.uniform(0.0, config.window, config.events_per_track))
        poses = [relative_pose(motion, float(t)) for t in taus]

        for attempt in range(SIM_MAX_REJECTIONS):
            depth = rng.uniform(config.depth_mean - config.depth_halfwidth, config.depth_mean + config.depth_halfwidth)
            point = WorldPoint2D(float(rng.uniform(-limit, limit) * depth), float(depth))
            bearings = _visible_bearings(point, poses, limit)
            if bearings is not None:
                break
        else:
            raise RejectionExhausted(
                f"路标 {landmark_index} 拒绝采样 {SIM_MAX_REJECTIONS} 次仍不可见 "
                f"(ω={omega:.4f}, 方位锥 ±{limit:.4f})"
            )

        exact = np.asarray(bearings)
        if config.noise_sigma > 0:
            noisy = exact + rng.normal(0.0, config.noise_sigma, exact.size) / config.focal
        else:
            noisy = exact
        samples = [BearingSample(float(x), float(t)) for x, t in zip(noisy, taus)]
        tracks.append(SyntheticTrack(samples, point, omega, [float(x) for x in exact]))

    logger.debug(f"生成场景: ω={omega:.4f} 路标={len(tracks)} 噪声={config.noise_sigma}px")
    return tracks


def omega_error(omega_rec: float, omega_gt: float) -> float:
    """ε = |ω_rec − ω_gt|"""
    return abs(omega_rec - omega_gt)
