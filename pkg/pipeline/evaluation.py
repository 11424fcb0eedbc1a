# -*- coding: utf-8 -*-
"""
评估指标 - 相对旋转角误差 ε 与平移方向误差 φ 的 RMS / 中位数
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .trajectory import TrajectoryPose
from .windows import WindowEstimate

logger = logging.getLogger(__name__)


class CoverageGap(ValueError):
    """真值未覆盖窗口时间段"""
    pass


class GroundTruth:
    """
    离散真值位姿，按时间线性插值（yaw 先展开）

    约定与 TrajectoryPose 一致：p_world = R(yaw)·p_vehicle + (x, y)。
    """

    def __init__(self, t: Sequence[float], x: Sequence[float], y: Sequence[float], yaw: Sequence[float]):
        order = np.argsort(np.asarray(t, dtype=float), kind="stable")
        self.t = np.asarray(t, dtype=float)[order]
        self.x = np.asarray(x, dtype=float)[order]
        self.y = np.asarray(y, dtype=float)[order]
        self.yaw = np.unwrap(np.asarray(yaw, dtype=float)[order])
        if self.t.size < 2:
            raise CoverageGap("真值至少需要两个位姿")

    @classmethod
    def from_poses(cls, poses: Sequence[TrajectoryPose]) -> "GroundTruth":
        return cls([p.t for p in poses], [p.x for p in poses], [p.y for p in poses], [p.yaw for p in poses])

    def shifted(self, offset: float) -> "GroundTruth":
        return GroundTruth(self.t + offset, self.x, self.y, self.yaw)

    def _check(self, t: float) -> None:
        if t < self.t[0] - 1e-12 or t > self.t[-1] + 1e-12:
            raise CoverageGap(f"真值时间范围 [{self.t[0]:.6f}, {self.t[-1]:.6f}] 不包含 t={t:.6f}")

    def interpolate(self, t: float) -> Tuple[float, float, float]:
        """(x, y, yaw) 在 t 处的线性插值"""
        self._check(t)
        return (
            float(np.interp(t, self.t, self.x)),
            float(np.interp(t, self.t, self.y)),
            float(np.interp(t, self.t, self.yaw)),
        )

    def yaw_change(self, t_start: float, t_end: float) -> float:
        return self.interpolate(t_end)[2] - self.interpolate(t_start)[2]

    def displacement_in_start_frame(self, t_start: float, t_end: float) -> Tuple[float, float]:
        """窗口内位移在起点车辆坐标系中的表示"""
        xs, ys, yaw_s = self.interpolate(t_start)
        xe, ye, _ = self.interpolate(t_end)
        c, s = math.cos(yaw_s), math.sin(yaw_s)
        dx, dy = xe - xs, ye - ys
        # R(ψ)ᵀ = [[c, -s], [s, c]]
        return (c * dx - s * dy, s * dx + c * dy)


@dataclass(frozen=True)
class ErrorStats:
    """误差统计（角度制）"""
    mu_eps: float
    nu_eps: float
    mu_phi: float
    nu_phi: float
    windows: int
    gaps: int
    avg_solve_ms: float = 0.0
    eps: Tuple[float, ...] = field(default=(), repr=False)
    phi: Tuple[float, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "mu_eps": self.mu_eps,
            "nu_eps": self.nu_eps,
            "mu_phi": self.mu_phi,
            "nu_phi": self.nu_phi,
            "windows": self.windows,
            "gaps": self.gaps,
            "avg_solve_ms": self.avg_solve_ms,
        }


def _angle_between(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    cross = a[0] * b[1] - a[1] * b[0]
    dot = a[0] * b[0] + a[1] * b[1]
    return abs(math.degrees(math.atan2(cross, dot)))


def _rms(values: Sequence[float]) -> float:
    return float(np.sqrt(np.mean(np.square(values))))


def evaluate(estimates: Sequence[WindowEstimate], ground_truth: GroundTruth) -> ErrorStats:
    """
    逐窗口 ε = |θ̂ − θ_gt|、φ = ∠(方向估计, 真值位移方向)，聚合为 RMS μ 与中位数 ν

    Args:
        estimates: 窗口估计（缺口窗口只计数）
        ground_truth: 真值位姿

    Returns:
        ErrorStats

    Raises:
        CoverageGap: 真值未覆盖某个窗口，或没有可评估的窗口
    """
    eps: List[float] = []
    phi: List[float] = []
    solve_ms: List[float] = []
    gaps = 0
    for window in sorted(estimates, key=lambda w: w.t_start):
        if window.is_gap:
            gaps += 1
            continue
        theta_gt = ground_truth.yaw_change(window.t_start, window.t_end)
        eps.append(abs(math.degrees(window.rotation - theta_gt)))

        disp = ground_truth.displacement_in_start_frame(window.t_start, window.t_end)
        if math.hypot(*disp) > 0.0:
            phi.append(_angle_between(window.translation_dir, disp))
        else:
            logger.debug(f"窗口 t_start={window.t_start:.3f} 真值位移为零，跳过 φ")
        solve_ms.append(window.solve_ms)

    if not eps:
        raise CoverageGap("没有可评估的窗口")

    stats = ErrorStats(
        mu_eps=_rms(eps),
        nu_eps=float(np.median(eps)),
        mu_phi=_rms(phi) if phi else 0.0,
        nu_phi=float(np.median(phi)) if phi else 0.0,
        windows=len(eps),
        gaps=gaps,
        avg_solve_ms=float(np.mean(solve_ms)),
        eps=tuple(eps),
        phi=tuple(phi),
    )
    logger.info(
        f"✅ 评估完成: μ(ε)={stats.mu_eps:.4f}° ν(ε)={stats.nu_eps:.4f}° "
        f"μ(φ)={stats.mu_phi:.4f}° ν(φ)={stats.nu_phi:.4f}° 窗口={stats.windows} 缺口={gaps}"
    )
    return stats


def scale_from_ground_truth(
    windows: Sequence[Tuple[float, float]],
    ground_truth: GroundTruth,
) -> List[Tuple[float, float, float]]:
    """
    各窗口的前向位移 d（起点车辆坐标系中的 y 分量）

    Args:
        windows: [(t_start, t_end), ...]
        ground_truth: 真值位姿

    Returns:
        [(t_start, t_end, d), ...]
    """
    return [
        (t_start, t_end, ground_truth.displacement_in_start_frame(t_start, t_end)[1])
        for t_start, t_end in windows
    ]
