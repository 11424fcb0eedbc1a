# -*- coding: utf-8 -*-
"""
轨迹积分 - 以外部尺度串联各窗口的圆弧位姿增量
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Union

from geometry import AckermannParams, PlanarPose, relative_pose
from .windows import WindowEstimate

logger = logging.getLogger(__name__)

# 窗口起点匹配容差（秒）
TIME_MATCH_TOL = 1e-9


class MissingScale(ValueError):
    """窗口缺少尺度"""
    pass


class MissingEstimate(ValueError):
    """没有任何可积分的窗口（全部为缺口）"""
    pass


@dataclass(frozen=True)
class TrajectoryPose:
    """
    平面位姿 (x, y, yaw)，yaw 右转为正

    segment 为轨迹段编号：缺口窗口处链条断开，下一段在自身起点处从原点重新开始。
    """
    t: float
    x: float
    y: float
    yaw: float
    segment: int = 0

    @classmethod
    def from_planar(cls, t: float, pose: PlanarPose, segment: int = 0) -> "TrajectoryPose":
        return cls(t, pose.translation[0], pose.translation[1], pose.rotation, segment)

    def to_planar(self) -> PlanarPose:
        return PlanarPose(self.yaw, (self.x, self.y))

    def to_dict(self) -> dict:
        return {"t": self.t, "x": self.x, "y": self.y, "yaw": self.yaw, "segment": self.segment}


ScaleInput = Union[float, Sequence[float], Dict[float, float]]


def resolve_scales(estimates: Sequence[WindowEstimate], scale: ScaleInput) -> List[Optional[float]]:
    """
    为每个窗口取得尺度 d

    Args:
        estimates: 窗口估计
        scale: 常数、与窗口一一对应的序列，或 {t_start: d} 映射

    Returns:
        与窗口等长的尺度列表；映射中没有条目的缺口窗口为 None

    Raises:
        MissingScale: 数量不符或某个非缺口窗口没有匹配的尺度
    """
    if isinstance(scale, (int, float)):
        return [float(scale)] * len(estimates)
    if isinstance(scale, dict):
        keys = sorted(scale)
        resolved: List[Optional[float]] = []
        for w in estimates:
            match = next((k for k in keys if abs(k - w.t_start) <= TIME_MATCH_TOL), None)
            if match is None:
                if w.is_gap:
                    resolved.append(None)
                    continue
                raise MissingScale(f"窗口 t_start={w.t_start!r} 没有尺度")
            resolved.append(float(scale[match]))
        return resolved
    values = [float(s) for s in scale]
    if len(values) != len(estimates):
        raise MissingScale(f"尺度数量 {len(values)} 与窗口数量 {len(estimates)} 不符")
    return values


def integrate_trajectory(estimates: Sequence[WindowEstimate], scale: ScaleInput) -> List[TrajectoryPose]:
    """
    串联窗口位姿增量

    窗口 k 的增量取 relative_pose(ω_k, τ=窗口长度, d=scale_k) 在
    min(长度, 下一窗口起点 − 本窗口起点) 处的值；窗口互不重叠时即整窗增量。
    缺口窗口不做插值：链条在此断开，前一窗口积分到自身终点，
    下一个有效窗口以新的 segment 编号从原点重新开始。

    Args:
        estimates: 窗口估计（内部按 t_start 排序）
        scale: 每窗口前向位移（常数、序列或映射）

    Returns:
        每段的起点加该段每个窗口末端的位姿

    Raises:
        MissingScale: 尺度缺失
        MissingEstimate: 全部窗口均为缺口
    """
    ordered = sorted(estimates, key=lambda w: w.t_start)
    if not ordered:
        return []
    scales = resolve_scales(ordered, scale)

    trajectory: List[TrajectoryPose] = []
    pose: Optional[PlanarPose] = None
    segment = -1
    for k, (window, d) in enumerate(zip(ordered, scales)):
        if window.is_gap:
            if pose is not None:
                logger.warning(
                    f"⚠️ 窗口 [{window.t_start:.3f}, {window.t_end:.3f}) 为缺口 ({window.gap_reason})，"
                    f"轨迹段 {segment} 在此结束"
                )
            pose = None
            continue
        if pose is None:
            segment += 1
            pose = PlanarPose.identity()
            trajectory.append(TrajectoryPose.from_planar(window.t_start, pose, segment))

        step = window.duration
        if k + 1 < len(ordered) and not ordered[k + 1].is_gap:
            step = min(step, ordered[k + 1].t_start - window.t_start)
        increment = relative_pose(AckermannParams(window.omega, window.duration, d), step)
        pose = pose.compose(increment)
        trajectory.append(TrajectoryPose.from_planar(window.t_start + step, pose, segment))

    if not trajectory:
        raise MissingEstimate(f"{len(ordered)} 个窗口全部为缺口，无法积分")
    last = trajectory[-1]
    logger.info(f"✅ 轨迹积分完成: 窗口={len(ordered)} 段数={segment + 1} 终点=({last.x:.3f}, {last.y:.3f})")
    return trajectory
