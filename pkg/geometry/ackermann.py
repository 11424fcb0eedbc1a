# -*- coding: utf-8 -*-
"""
阿克曼运动学 - 精确三角形式的相对位姿、平面投影与入射系数

坐标约定：车辆坐标系 x 向右、y 向前、z 向上，相机坐标系与车辆坐标系重合。
ω > 0 表示前进右转。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from config.constants import OMEGA_SWITCH

logger = logging.getLogger(__name__)


class PointBehindCamera(ValueError):
    """路标点位于相机后方（p_i^y ≤ 0）"""
    pass


class DegenerateScale(ValueError):
    """ωτ 为 π 的非零整数倍，尺度无法由 d/sin(ωτ) 固定"""
    pass


@dataclass(frozen=True)
class AckermannParams:
    """阿克曼圆弧运动参数"""
    omega: float
    tau: float
    d: float = 1.0

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError(f"tau 必须为正: {self.tau}")
        if not self.d > 0:
            raise ValueError(f"d 必须为正: {self.d}")

    @property
    def turn(self) -> float:
        """ωτ"""
        return self.omega * self.tau

    @property
    def is_straight(self) -> bool:
        return abs(self.turn) < OMEGA_SWITCH

    @property
    def radius(self) -> float:
        """转弯半径 r = d/sin(ωτ)，直线运动时为无穷大"""
        if self.is_straight:
            return math.inf
        return self.d / _checked_sin(self.turn)


@dataclass(frozen=True)
class PlanarPose:
    """
    平面位姿

    rotation 为 θ，translation 为 (t_x, t_y)。旋转矩阵取
    R(θ) = [[cos θ, sin θ], [-sin θ, cos θ]]，满足 p_0 = R p_i + t。
    """
    rotation: float
    translation: Tuple[float, float]

    @classmethod
    def identity(cls) -> "PlanarPose":
        return cls(0.0, (0.0, 0.0))

    def rotation_matrix(self) -> np.ndarray:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return np.array([[c, s], [-s, c]])

    def compose(self, other: "PlanarPose") -> "PlanarPose":
        """
        位姿串联：self 为 0→i，other 为 i→j，返回 0→j

        Args:
            other: 以 self 末端为参考的位姿增量

        Returns:
            串联后的位姿
        """
        tx, ty = self.rotation_matrix() @ np.asarray(other.translation)
        return PlanarPose(
            self.rotation + other.rotation,
            (float(tx + self.translation[0]), float(ty + self.translation[1])),
        )

    def inverse_transform(self, bearing: float, depth: float) -> "WorldPoint2D":
        """
        由该位姿下的方位与前向深度恢复参考帧中的路标点

        Args:
            bearing: 归一化方位 x = p_i^x / p_i^y
            depth: 前向坐标 p_i^y

        Returns:
            参考帧坐标 p_0 = R p_i + t
        """
        p0 = self.rotation_matrix() @ np.array([bearing * depth, depth]) + np.asarray(self.translation)
        return WorldPoint2D(float(p0[0]), float(p0[1]))


@dataclass(frozen=True)
class WorldPoint2D:
    """参考帧（窗口起点）中的平面路标点"""
    p0x: float
    p0y: float


def _checked_sin(turn: float) -> float:
    s = math.sin(turn)
    if abs(s) < 1e-12 * max(1.0, abs(turn)):
        raise DegenerateScale(f"ωτ={turn} 为 π 的整数倍，尺度退化")
    return s


def relative_pose(params: AckermannParams, tau_i: float) -> PlanarPose:
    """
    计算窗口内任意时刻的相对位姿

    Args:
        params: 运动参数
        tau_i: 相对窗口起点的时间（秒），须 ≥ 0

    Returns:
        PlanarPose: θ_i = ω·τ_i，t_i = d/sin(ωτ)·(1−cos θ_i, sin θ_i)

    Raises:
        ValueError: tau_i 为负
        DegenerateScale: ωτ 为 π 的非零整数倍
    """
    if tau_i < 0:
        raise ValueError(f"tau_i 必须非负: {tau_i}")

    theta = params.omega * tau_i
    if params.is_straight:
        lateral = 0.5 * params.d * params.omega * tau_i * tau_i / params.tau
        return PlanarPose(theta, (lateral, params.d * tau_i / params.tau))

    scale = params.d / _checked_sin(params.turn)
    # 1 - cos θ = 2 sin²(θ/2)
    half = math.sin(0.5 * theta)
    return PlanarPose(theta, (scale * 2.0 * half * half, scale * math.sin(theta)))


def project_bearing(point: WorldPoint2D, pose: PlanarPose) -> float:
    """
    将参考帧路标投影为水平方位

    Args:
        point: 参考帧中的路标点
        pose: 观测时刻的相对位姿

    Returns:
        归一化横坐标 x = p_i^x / p_i^y

    Raises:
        PointBehindCamera: p_i^y ≤ 0
    """
    rel = np.array([point.p0x - pose.translation[0], point.p0y - pose.translation[1]])
    pix, piy = pose.rotation_matrix().T @ rel
    if piy <= 0:
        raise PointBehindCamera(f"路标在相机后方: p_i^y={piy:.6g}")
    return float(pix / piy)


def exact_incidence_row(x_i: float, tau_i: float, params: AckermannParams) -> Tuple[float, float, float]:
    """
    精确入射系数 (a1, a2, a3)，满足 a·(p0x, p0y, d) = 0

    Args:
        x_i: 归一化方位
        tau_i: 相对时间（秒）
        params: 运动参数（仅使用 ω 与 τ）

    Returns:
        三元组 (a1, a2, a3)

    Raises:
        DegenerateScale: ωτ 为 π 的非零整数倍
    """
    theta = params.omega * tau_i
    c, s = math.cos(theta), math.sin(theta)
    a1 = c - x_i * s
    a2 = -x_i * c - s
    if params.is_straight:
        # 极限形式 (x τ_i + ω τ_i²/2)/τ
        a3 = (x_i * tau_i + 0.5 * params.omega * tau_i * tau_i) / params.tau
    else:
        half = math.sin(0.5 * theta)
        a3 = (x_i * s + 2.0 * half * half) / _checked_sin(params.turn)
    return a1, a2, a3


def exact_incidence_matrix(xs: Sequence[float], taus: Sequence[float], params: AckermannParams) -> np.ndarray:
    """
    堆叠的精确入射矩阵（n×3）

    Args:
        xs: 方位序列
        taus: 对应相对时间
        params: 运动参数

    Returns:
        形状为 (n, 3) 的数组
    """
    xs = np.asarray(xs, dtype=float)
    taus = np.asarray(taus, dtype=float)
    theta = params.omega * taus
    c, s = np.cos(theta), np.sin(theta)
    if params.is_straight:
        a3 = (xs * taus + 0.5 * params.omega * np.square(taus)) / params.tau
    else:
        a3 = (xs * s + 2.0 * np.square(np.sin(0.5 * theta))) / _checked_sin(params.turn)
    return np.column_stack([c - xs * s, -xs * c - s, a3])
