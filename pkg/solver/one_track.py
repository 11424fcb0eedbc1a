# -*- coding: utf-8 -*-
"""
单轨迹求解器 - 最小化 det(M(ω)) 求旋转角速度，并恢复零空间结构
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Hashable, List, Optional, Sequence

import numpy as np

from config.constants import (
    NULLSPACE_RTOL,
    OMEGA_MAX,
    PSD_FLOOR,
    ROOT_TOL,
    TIE_RTOL,
)
from geometry import AckermannParams, WorldPoint2D, exact_incidence_matrix
from poly import NumericalBreakdown, Polynomial, real_roots
from .expansion import BearingSample, ExpansionOrder
from .matrix import build_matrix, det_poly, gram

logger = logging.getLogger(__name__)


class NoCandidates(ArithmeticError):
    """行列式多项式恒为零，数据退化"""
    pass


class DegenerateNullspace(ArithmeticError):
    """最小两个奇异值过于接近，结构二义"""
    pass


@dataclass(frozen=True)
class SolverConfig:
    """单轨迹求解参数"""
    omega_max: float = OMEGA_MAX
    root_tol: float = ROOT_TOL
    tie_rtol: float = TIE_RTOL

    def __post_init__(self):
        if not self.omega_max > 0:
            raise ValueError(f"omega_max 必须为正: {self.omega_max}")
        if not self.root_tol > 0:
            raise ValueError(f"root_tol 必须为正: {self.root_tol}")


@dataclass(frozen=True)
class OmegaEstimate:
    """
    单条轨迹的角速度估计

    objective 为缩放变量 u = ω·variable_scale 下的行列式多项式，
    供多轨迹联合细化使用；合成注入的估计可以不带。
    """
    omega: float
    residual: float
    n_candidates: int
    track_id: Hashable = None
    objective: Optional[Polynomial] = field(default=None, repr=False, compare=False)
    variable_scale: float = 1.0
    solve_ms: float = 0.0

    def objective_at(self, omega):
        """det(M) 在 ω 处的值（需要 objective）"""
        if self.objective is None:
            raise ValueError(f"轨迹 {self.track_id} 没有目标多项式")
        return self.objective(np.asarray(omega) * self.variable_scale)

    def to_dict(self) -> dict[str, Any]:
        return {
            "track_id": self.track_id,
            "omega": self.omega,
            "residual": self.residual,
            "n_candidates": self.n_candidates,
            "solve_ms": self.solve_ms,
        }


@dataclass(frozen=True)
class StructureEstimate:
    """零空间向量 (p0x, p0y, d)"""
    point: WorldPoint2D
    d: float
    singular_values: tuple


def _critical_points(det_u: Polynomial, u_max: float, config: SolverConfig) -> List[float]:
    """
    det 导数在 [-u_max, u_max] 内的实根；无法括住的区间贡献其两端点

    Raises:
        NumericalBreakdown: 变量重映射到 [-1, 1] 后仍然失败
    """
    deriv = det_u.derivative().trim()
    if deriv.degree() <= 0:
        return []

    def collect(poly: Polynomial, bound: float, tol: float, unit: float) -> List[float]:
        points: List[float] = []
        for iv in real_roots(poly, -bound, bound, tol):
            if iv.value is None:
                points.extend([iv.lo * unit, iv.hi * unit])
            else:
                points.append(iv.value * unit)
        return points

    try:
        return collect(deriv, u_max, config.root_tol, 1.0)
    except NumericalBreakdown as first:
        logger.warning(f"⚠️ Sturm 序列失效，映射到 [-1, 1] 重试: {first}")
        try:
            return collect(deriv.substitute_scale(u_max), 1.0, config.root_tol / u_max, u_max)
        except NumericalBreakdown as e:
            raise NumericalBreakdown(
                f"det(M) 导数的 Sturm 序列在重映射后仍然失效 (deg={deriv.degree()})，建议缩短窗口"
            ) from e


def _select(candidates: np.ndarray, values: np.ndarray, tie_rtol: float, track_id) -> int:
    best = int(np.argmin(values))
    tied = [
        i for i in range(values.size)
        if abs(values[i] - values[best]) <= tie_rtol * max(abs(values[i]), abs(values[best]))
    ]
    if len(tied) > 1:
        chosen = min(tied, key=lambda i: (abs(candidates[i]), candidates[i]))
        logger.info(
            f"⚠️ 候选点并列 track={track_id}: u={[float(candidates[i]) for i in tied]}，取 |u| 最小者"
        )
        return chosen
    return best


def solve_omega(
    samples: Sequence[BearingSample],
    order: ExpansionOrder | str,
    tau: float,
    config: Optional[SolverConfig] = None,
    track_id: Hashable = None,
) -> OmegaEstimate:
    """
    单轨迹角速度求解

    流程：build_matrix → 变量缩放 u = ω·T 并按 |c(0)| 归一化各行 → gram →
    det_poly → det 导数的实根 → 在临界点与区间端点处比较 det，取最小者。

    Args:
        samples: 方位样本（≥ 3，时间严格递增）
        order: 展开阶数
        tau: 尺度时间常数（秒）
        config: 求解参数，默认 SolverConfig()
        track_id: 轨迹标识

    Returns:
        OmegaEstimate

    Raises:
        TooFewSamples / DuplicateTimestamp: 样本不合法
        NoCandidates: 行列式多项式恒为零
        NumericalBreakdown: 重映射后 Sturm 序列仍失效
    """
    started = time.perf_counter()
    config = config or SolverConfig()
    order = ExpansionOrder.parse(order)

    B = build_matrix(samples, order, tau)
    span = float(samples[-1].tau_i)
    # 各元素的 k 次系数乘以 T^-k，使 u = ω·T
    Bu = B.substitute_scale(1.0 / span).scaled(1.0 / (abs(order.kappa) * tau))
    M = gram(Bu)
    det_u = det_poly(M)
    if det_u.trim().is_zero():
        raise NoCandidates(f"轨迹 {track_id} 的行列式多项式恒为零")

    u_max = config.omega_max * span
    candidates = np.array(sorted({-u_max, u_max, *_critical_points(det_u, u_max, config)}))
    values = det_u(candidates)
    best = _select(candidates, values, config.tie_rtol, track_id)
    u_hat = float(candidates[best])

    residual = float(np.linalg.det(M.evaluate(u_hat)))
    if residual < 0.0:
        if residual < PSD_FLOOR:
            logger.debug(f"det(M) 残差为负 {residual:.3g}，按舍入误差截断为 0")
        residual = 0.0

    estimate = OmegaEstimate(
        omega=u_hat / span,
        residual=residual,
        n_candidates=int(candidates.size),
        track_id=track_id,
        objective=det_u,
        variable_scale=span,
        solve_ms=(time.perf_counter() - started) * 1000.0,
    )
    logger.debug(
        f"求解完成 track={track_id} order={order.value} ω={estimate.omega:.6g} "
        f"候选={estimate.n_candidates} 耗时={estimate.solve_ms:.2f}ms"
    )
    return estimate


def recover_structure(
    samples: Sequence[BearingSample],
    order: ExpansionOrder | str,
    tau: float,
    omega: float,
) -> StructureEstimate:
    """
    B(ω) 最小奇异值对应的右奇异向量

    Args:
        samples: 方位样本
        order: 展开阶数
        tau: 尺度时间常数
        omega: 已求得的角速度

    Returns:
        StructureEstimate，d 非零时归一化为 +1

    Raises:
        DegenerateNullspace: σ2 − σ3 ≤ 1e-6·σ1
    """
    B = build_matrix(samples, order, tau).evaluate(omega)
    _, sigma, vh = np.linalg.svd(B, full_matrices=False)
    if sigma[1] - sigma[2] <= NULLSPACE_RTOL * sigma[0]:
        raise DegenerateNullspace(f"最小两个奇异值过近: {sigma[1]:.3g}, {sigma[2]:.3g}")

    v = vh[-1]
    if abs(v[2]) > 1e-12 * np.linalg.norm(v):
        v = v / v[2]
    elif v[1] < 0:
        v = -v
    return StructureEstimate(WorldPoint2D(float(v[0]), float(v[1])), float(v[2]), tuple(float(s) for s in sigma))


def smallest_singular_value(samples: Sequence[BearingSample], omegas, tau: float) -> np.ndarray:
    """
    精确三角入射矩阵的最小奇异值（秩目标），支持 ω 数组

    Args:
        samples: 方位样本
        omegas: 标量或数组
        tau: 尺度时间常数

    Returns:
        与 omegas 同形状的最小奇异值
    """
    xs = [s.x for s in samples]
    taus = [s.tau_i for s in samples]
    grid = np.atleast_1d(np.asarray(omegas, dtype=float))
    stacked = np.stack([exact_incidence_matrix(xs, taus, AckermannParams(w, tau)) for w in grid])
    sigma = np.linalg.svd(stacked, compute_uv=False)[:, -1]
    return sigma.reshape(np.shape(omegas)) if np.ndim(omegas) else float(sigma[0])
