# -*- coding: utf-8 -*-
"""
直方图投票 - 多轨迹角速度融合、内点筛选与联合细化
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Hashable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from config.constants import (
    OMEGA_MAX,
    VOTE_BIN_WIDTH,
    VOTE_MIN_INLIERS,
    VOTE_NEIGHBOR_SPAN,
    VOTE_REFINE,
    VOTE_REFINE_GRID,
)
from solver import OmegaEstimate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VoteConfig:
    """投票参数"""
    bin_width: float = VOTE_BIN_WIDTH
    neighbor_span: int = VOTE_NEIGHBOR_SPAN
    min_inliers: int = VOTE_MIN_INLIERS
    refine: bool = VOTE_REFINE
    omega_max: float = OMEGA_MAX

    def __post_init__(self):
        if not self.bin_width > 0:
            raise ValueError(f"bin_width 必须为正: {self.bin_width}")
        if self.neighbor_span < 0:
            raise ValueError(f"neighbor_span 不能为负: {self.neighbor_span}")
        if self.min_inliers < 1:
            raise ValueError(f"min_inliers 至少为 1: {self.min_inliers}")
        if not self.omega_max > 0:
            raise ValueError(f"omega_max 必须为正: {self.omega_max}")


@dataclass(frozen=True)
class Histogram:
    """直方图：edges 比 counts 多一个元素"""
    edges: Tuple[float, ...]
    counts: Tuple[int, ...]

    @property
    def centers(self) -> np.ndarray:
        edges = np.asarray(self.edges)
        return 0.5 * (edges[:-1] + edges[1:])


@dataclass(frozen=True)
class VoteResult:
    """投票结果"""
    omega_consensus: float
    inlier_ids: Tuple[Hashable, ...]
    histogram: Histogram
    refined: bool

    @property
    def inlier_count(self) -> int:
        return len(self.inlier_ids)


class InsufficientConsensus(RuntimeError):
    """众数箱及其邻域内的估计少于 min_inliers"""

    def __init__(self, message: str, histogram: Optional[Histogram] = None):
        super().__init__(message)
        self.histogram = histogram


def _bin_edges(config: VoteConfig) -> np.ndarray:
    n_bins = max(1, math.ceil(2.0 * config.omega_max / config.bin_width))
    return -config.omega_max + config.bin_width * np.arange(n_bins + 1)


def _bin_index(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    n_bins = edges.size - 1
    return np.clip(np.searchsorted(edges, values, side="right") - 1, 0, n_bins - 1)


def _joint_refine(inliers: Sequence[OmegaEstimate], lo: float, hi: float) -> Optional[float]:
    """
    在 [lo, hi] 上最小化 Σ_j det_j(ω) / sup|det_j|

    Returns:
        细化后的 ω；没有可用目标多项式时为 None
    """
    grid = np.linspace(lo, hi, VOTE_REFINE_GRID)
    terms = []
    for est in inliers:
        if est.objective is None:
            continue
        sup = float(np.max(np.abs(est.objective_at(grid))))
        if sup > 0.0:
            terms.append((est, sup))
    if not terms:
        return None

    def joint(omega: float) -> float:
        return float(sum(est.objective_at(omega) / sup for est, sup in terms))

    result = minimize_scalar(joint, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    return float(min(max(result.x, lo), hi))


def histogram_vote(estimates: Sequence[OmegaEstimate], config: Optional[VoteConfig] = None) -> VoteResult:
    """
    直方图投票融合

    Args:
        estimates: 各轨迹的角速度估计（至少 1 个）
        config: 投票参数，默认 VoteConfig()

    Returns:
        VoteResult：内点为众数箱 ± neighbor_span 箱内的估计，
        共识值为内点中位数，refine 时替换为联合归一化行列式的有界最小点

    Raises:
        ValueError: estimates 为空
        InsufficientConsensus: 内点数少于 min_inliers（仅一个估计时不设下限）
    """
    if not estimates:
        raise ValueError("投票需要至少一个估计")
    config = config or VoteConfig()

    ordered: List[OmegaEstimate] = sorted(estimates, key=lambda e: (e.omega, str(e.track_id)))
    omegas = np.array([e.omega for e in ordered])

    edges = _bin_edges(config)
    index = _bin_index(omegas, edges)
    counts = np.bincount(index, minlength=edges.size - 1)
    histogram = Histogram(tuple(float(e) for e in edges), tuple(int(c) for c in counts))

    centers = histogram.centers
    occupied = np.nonzero(counts)[0]
    mode = min(occupied, key=lambda b: (-counts[b], abs(centers[b]), centers[b]))

    mask = np.abs(index - mode) <= config.neighbor_span
    inliers = [e for e, keep in zip(ordered, mask) if keep]
    # 单个估计自成共识
    required = 1 if len(ordered) == 1 else config.min_inliers
    if len(inliers) < required:
        raise InsufficientConsensus(
            f"内点不足: {len(inliers)} < {required} (众数箱中心 {centers[mode]:.4f} rad/s)",
            histogram,
        )

    inlier_omegas = omegas[mask]
    consensus = float(np.median(inlier_omegas))
    refined = False
    lo, hi = float(inlier_omegas.min()), float(inlier_omegas.max())
    if config.refine and hi > lo:
        joint = _joint_refine(inliers, lo, hi)
        if joint is not None:
            consensus, refined = joint, True

    logger.debug(
        f"投票完成: 估计={len(ordered)} 内点={len(inliers)} ω={consensus:.6g} refined={refined}"
    )
    return VoteResult(consensus, tuple(e.track_id for e in inliers), histogram, refined)
