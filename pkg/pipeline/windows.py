# -*- coding: utf-8 -*-
"""
时间窗口估计 - 窗口划分、逐轨迹求解与直方图投票融合
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from config.constants import (
    DEFAULT_ORDER,
    WINDOW_EPOCH,
    WINDOW_LENGTH,
    WINDOW_MIN_EVENTS,
    WINDOW_STRIDE,
)
from geometry import DegenerateScale
from poly import NumericalBreakdown
from robust import InsufficientConsensus, VoteConfig, histogram_vote
from solver import ExpansionOrder, InvalidSamples, NoCandidates, SolverConfig, solve_omega
from .tracks import CameraIntrinsics, EmptyInput, EventTrack, normalize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WindowConfig:
    """窗口划分参数；边界只取决于 epoch、length、stride"""
    length: float = WINDOW_LENGTH
    stride: float = WINDOW_STRIDE
    epoch: float = WINDOW_EPOCH
    min_events: int = WINDOW_MIN_EVENTS
    tau: Optional[float] = None

    def __post_init__(self):
        if not (self.length > 0 and self.stride > 0):
            raise ValueError(f"窗口长度与步长必须为正: length={self.length}, stride={self.stride}")
        if self.min_events < 3:
            raise ValueError(f"窗口内最少事件数至少为 3: {self.min_events}")

    @property
    def solver_tau(self) -> float:
        return self.length if self.tau is None else self.tau

    def bounds(self, t_min: float, t_max: float) -> List[Tuple[float, float]]:
        """覆盖 [t_min, t_max] 的全部窗口 [start, start + length)"""
        first = math.floor((t_min - self.epoch - self.length) / self.stride) + 1
        last = math.floor((t_max - self.epoch) / self.stride)
        return [
            (self.epoch + k * self.stride, self.epoch + k * self.stride + self.length)
            for k in range(first, last + 1)
        ]


@dataclass(frozen=True)
class WindowEstimate:
    """
    单个窗口的估计；omega 为 None 时是缺口记录，gap_reason 说明原因
    """
    t_start: float
    t_end: float
    omega: Optional[float]
    inlier_count: int
    translation_dir: Optional[Tuple[float, float]]
    track_count: int = 0
    solve_ms: float = 0.0
    gap_reason: Optional[str] = None

    @property
    def is_gap(self) -> bool:
        return self.omega is None

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    @property
    def rotation(self) -> Optional[float]:
        """窗口内相对旋转角 θ = ω·(t_end − t_start)"""
        return None if self.omega is None else self.omega * self.duration

    def to_dict(self) -> dict:
        return {
            "t_start": self.t_start,
            "t_end": self.t_end,
            "omega": self.omega,
            "inliers": self.inlier_count,
            "translation_dir": list(self.translation_dir) if self.translation_dir else None,
            "tracks": self.track_count,
            "solve_ms": self.solve_ms,
            "gap_reason": self.gap_reason,
        }


def translation_direction(omega: float, duration: float) -> Tuple[float, float]:
    """
    圆弧平移方向：∝ (1 − cos θ, sin θ)/sin θ，即单位向量 (sin(θ/2), cos(θ/2))
    """
    half = 0.5 * omega * duration
    return (math.sin(half), math.cos(half))


def _solve_window(
    index: int,
    bounds: Tuple[float, float],
    tracks: Sequence[EventTrack],
    intrinsics: CameraIntrinsics,
    window_cfg: WindowConfig,
    solver_cfg: SolverConfig,
    vote_cfg: VoteConfig,
    order: ExpansionOrder,
) -> WindowEstimate:
    t_start, t_end = bounds
    started = time.perf_counter()
    estimates = []
    for track in tracks:
        clipped = track.clip(t_start, t_end)
        if len(clipped) < window_cfg.min_events:
            continue
        samples = normalize(clipped, intrinsics, t0=t_start)
        try:
            estimates.append(
                solve_omega(samples, order, window_cfg.solver_tau, solver_cfg, track_id=track.track_id)
            )
        except (InvalidSamples, NoCandidates, NumericalBreakdown, DegenerateScale) as e:
            logger.debug(f"窗口 {index} 轨迹 {track.track_id} 求解失败: {e}")

    if not estimates:
        logger.warning(f"⚠️ 窗口 [{t_start:.3f}, {t_end:.3f}) 没有有效轨迹，记为缺口")
        return WindowEstimate(t_start, t_end, None, 0, None, 0, 0.0, "没有有效轨迹")
    try:
        vote = histogram_vote(estimates, vote_cfg)
    except InsufficientConsensus as e:
        logger.warning(f"⚠️ 窗口 [{t_start:.3f}, {t_end:.3f}) 投票失败，记为缺口: {e}")
        return WindowEstimate(t_start, t_end, None, 0, None, len(estimates), 0.0, str(e))

    elapsed = (time.perf_counter() - started) * 1000.0
    return WindowEstimate(
        t_start,
        t_end,
        vote.omega_consensus,
        vote.inlier_count,
        translation_direction(vote.omega_consensus, t_end - t_start),
        len(estimates),
        elapsed,
    )


def estimate_windows(
    tracks: Sequence[EventTrack],
    intrinsics: CameraIntrinsics,
    window_cfg: Optional[WindowConfig] = None,
    solver_cfg: Optional[SolverConfig] = None,
    vote_cfg: Optional[VoteConfig] = None,
    order: ExpansionOrder | str = DEFAULT_ORDER,
    workers: int = 1,
) -> List[WindowEstimate]:
    """
    逐窗口估计角速度

    Args:
        tracks: 有效事件轨迹
        intrinsics: 相机内参
        window_cfg: 窗口参数
        solver_cfg: 求解参数
        vote_cfg: 投票参数
        order: 展开阶数
        workers: 并行线程数

    Returns:
        按 t_start 排序的 WindowEstimate 列表，缺口窗口显式保留

    Raises:
        EmptyInput: 没有轨迹
    """
    if not tracks:
        raise EmptyInput("没有可用于窗口估计的轨迹")
    window_cfg = window_cfg or WindowConfig()
    solver_cfg = solver_cfg or SolverConfig()
    vote_cfg = vote_cfg or VoteConfig()
    order = ExpansionOrder.parse(order)

    t_min = min(t.t_start for t in tracks)
    t_max = max(t.t_end for t in tracks)
    all_bounds = window_cfg.bounds(t_min, t_max)
    logger.info(f"📅 窗口估计: 轨迹={len(tracks)} 窗口={len(all_bounds)} order={order.value} workers={workers}")

    def run(item):
        index, bounds = item
        return _solve_window(index, bounds, tracks, intrinsics, window_cfg, solver_cfg, vote_cfg, order)

    items = list(enumerate(all_bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, items))
    else:
        results = [run(item) for item in items]

    results.sort(key=lambda w: w.t_start)
    gaps = sum(w.is_gap for w in results)
    logger.info(f"✅ 窗口估计完成: 输出={len(results) - gaps} 缺口={gaps}")
    return results
