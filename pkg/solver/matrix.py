# -*- coding: utf-8 -*-
"""
测量矩阵 B(ω)、Gram 矩阵 M(ω) = BᵀB 与行列式多项式
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import numpy.polynomial.polynomial as npoly

from config.constants import MIN_SAMPLES
from poly import Polynomial
from .expansion import BearingSample, ExpansionOrder, taylor_coefficients


class InvalidSamples(ValueError):
    """样本不满足求解前置条件"""
    pass


class TooFewSamples(InvalidSamples):
    """样本数少于 3"""
    pass


class DuplicateTimestamp(InvalidSamples):
    """样本时间未严格递增"""
    pass


@dataclass(frozen=True)
class MeasurementMatrix:
    """
    n×3 多项式矩阵 B(ω)

    coeffs 形状为 (n, 3, L)，最后一维为升幂系数。
    """
    coeffs: np.ndarray
    order: ExpansionOrder
    tau: float

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    @property
    def rows(self) -> List[Tuple[Polynomial, Polynomial, Polynomial]]:
        return [tuple(Polynomial(c) for c in row) for row in self.coeffs]

    def evaluate(self, omega: float) -> np.ndarray:
        """在 ω 处求值，返回 (n, 3) 数组"""
        return npoly.polyval(omega, np.moveaxis(self.coeffs, -1, 0))

    def substitute_scale(self, factor: float) -> "MeasurementMatrix":
        """变量替换 ω = factor·u"""
        powers = float(factor) ** np.arange(self.coeffs.shape[-1])
        return MeasurementMatrix(self.coeffs * powers, self.order, self.tau)

    def scaled(self, factor: float) -> "MeasurementMatrix":
        return MeasurementMatrix(self.coeffs * float(factor), self.order, self.tau)


@dataclass(frozen=True)
class PolyMatrix3:
    """3×3 多项式矩阵"""
    entries: Tuple[Tuple[Polynomial, ...], ...]

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i][j]

    @property
    def nominal_degree(self) -> int:
        return max(p.nominal_degree for row in self.entries for p in row)

    def evaluate(self, x: float) -> np.ndarray:
        return np.array([[p(x) for p in row] for row in self.entries])

    def is_symmetric(self, rtol: float = 1e-12) -> bool:
        return all(
            self.entries[i][j].allclose(self.entries[j][i], rtol=rtol)
            for i in range(3)
            for j in range(i + 1, 3)
        )


def build_matrix(samples: Sequence[BearingSample], order: ExpansionOrder | str, tau: float) -> MeasurementMatrix:
    """
    堆叠各样本的泰勒行

    Args:
        samples: 按时间严格递增的样本（至少 3 个）
        order: 展开阶数
        tau: 尺度时间常数（秒）

    Returns:
        MeasurementMatrix，行顺序与样本一致

    Raises:
        TooFewSamples: 样本少于 3 个
        DuplicateTimestamp: 时间非严格递增
        InvalidSamples: 存在负的相对时间
    """
    if len(samples) < MIN_SAMPLES:
        raise TooFewSamples(f"样本数 {len(samples)} < {MIN_SAMPLES}")
    if not tau > 0:
        raise ValueError(f"tau 必须为正: {tau}")
    taus = np.array([s.tau_i for s in samples], dtype=float)
    xs = np.array([s.x for s in samples], dtype=float)
    if np.any(taus < 0):
        raise InvalidSamples("存在负的相对时间 tau_i")
    steps = np.diff(taus)
    if np.any(steps <= 0):
        index = int(np.argmax(steps <= 0)) + 1
        raise DuplicateTimestamp(f"第 {index} 个样本时间未严格递增: tau_i={taus[index]}")

    order = ExpansionOrder.parse(order)
    return MeasurementMatrix(taylor_coefficients(xs, taus, order, tau), order, float(tau))


def gram(B: MeasurementMatrix) -> PolyMatrix3:
    """
    M(ω) = Bᵀ B，entry(p, q) = Σ_i b_ip·b_iq

    每个元素按 (AᵀC) 的反对角线求和得到卷积之和。
    """
    length = B.coeffs.shape[-1]
    index = np.add.outer(np.arange(length), np.arange(length)).ravel()
    grid: List[List[Polynomial]] = [[None] * 3 for _ in range(3)]
    for p in range(3):
        for q in range(p, 3):
            outer = B.coeffs[:, p, :].T @ B.coeffs[:, q, :]
            entry = Polynomial(np.bincount(index, weights=outer.ravel(), minlength=2 * length - 1))
            grid[p][q] = entry
            grid[q][p] = entry
    return PolyMatrix3(tuple(tuple(row) for row in grid))


def det_poly(M: PolyMatrix3) -> Polynomial:
    """3×3 余子式展开"""
    m = M.entries
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
