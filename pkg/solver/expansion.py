# -*- coding: utf-8 -*-
"""
泰勒展开行 - 截断正余弦展开下的入射系数多项式

对阶数 m（s3c2: 1, s5c4: 2, s7c6: 3），S 为截断到 2m+1 次的正弦级数，
C 为截断到 2m 次的余弦级数，θ_i = ω·τ_i：

    ã1 = C(θ_i) − x·S(θ_i)
    ã2 = −x·C(θ_i) − S(θ_i)
    ã3 = [x·S(θ_i) − C(θ_i) + 1] / S(ωτ)

乘子 c(ω) = κ·S(ωτ)/ω，κ = (−1)^m (2m+1)!，消去 ã3 的分母后
b = c·ã 为 ω 的多项式。
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from config.constants import SUPPORTED_ORDERS
from config.loader import normalize_name
from poly import Polynomial


class ExpansionOrder(str, Enum):
    """正余弦截断阶数"""
    S3C2 = "s3c2"
    S5C4 = "s5c4"
    S7C6 = "s7c6"

    @classmethod
    def parse(cls, value: "ExpansionOrder | str") -> "ExpansionOrder":
        """
        解析阶数名称（忽略大小写与空白）

        Raises:
            ConfigError: 不支持的名称
        """
        if isinstance(value, cls):
            return value
        return cls(normalize_name(value, SUPPORTED_ORDERS))

    @property
    def half_order(self) -> int:
        return {"s3c2": 1, "s5c4": 2, "s7c6": 3}[self.value]

    @property
    def kappa(self) -> float:
        m = self.half_order
        return float((-1) ** m * math.factorial(2 * m + 1))

    @property
    def row_degree(self) -> int:
        """b 行名义次数：5 / 9 / 13"""
        return 4 * self.half_order + 1

    @property
    def gram_degree(self) -> int:
        """Gram 元素名义次数：10 / 18 / 26"""
        return 2 * self.row_degree

    @property
    def det_degree(self) -> int:
        """行列式名义次数：30 / 54 / 78"""
        return 3 * self.gram_degree


@dataclass(frozen=True)
class BearingSample:
    """归一化水平方位及其相对窗口起点的时间"""
    x: float
    tau_i: float


def sine_series(t: np.ndarray, m: int) -> np.ndarray:
    """
    S(ω·t) 关于 ω 的升幂系数，形状 (n, 2m+2)
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros((t.size, 2 * m + 2))
    for j in range(m + 1):
        k = 2 * j + 1
        out[:, k] = (-1) ** j * t ** k / math.factorial(k)
    return out


def cosine_series(t: np.ndarray, m: int) -> np.ndarray:
    """
    C(ω·t) 关于 ω 的升幂系数，补零到形状 (n, 2m+2)
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros((t.size, 2 * m + 2))
    for j in range(m + 1):
        k = 2 * j
        out[:, k] = (-1) ** j * t ** k / math.factorial(k)
    return out


def multiplier(order: ExpansionOrder, tau: float) -> Polynomial:
    """
    乘子 c(ω) = κ·S(ωτ)/ω

    s3c2 时为 τ(τ²ω² − 6)。
    """
    m = order.half_order
    return Polynomial(order.kappa * sine_series(tau, m)[0, 1:])


def _convolve_rows(rows: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    out = np.zeros((rows.shape[0], rows.shape[1] + kernel.size - 1))
    for j, cj in enumerate(kernel):
        if cj != 0.0:
            out[:, j : j + rows.shape[1]] += cj * rows
    return out


def taylor_coefficients(xs: np.ndarray, taus: np.ndarray, order: ExpansionOrder, tau: float) -> np.ndarray:
    """
    批量计算 b 行系数

    Args:
        xs: 方位，形状 (n,)
        taus: 相对时间，形状 (n,)
        order: 展开阶数
        tau: 尺度时间常数

    Returns:
        形状 (n, 3, row_degree+1) 的升幂系数
    """
    m = order.half_order
    xs = np.atleast_1d(np.asarray(xs, dtype=float))[:, None]
    S = sine_series(taus, m)
    C = cosine_series(taus, m)
    kernel = multiplier(order, tau).coeffs

    length = order.row_degree + 1
    out = np.zeros((S.shape[0], 3, length))
    out[:, 0, :] = _convolve_rows(C - xs * S, kernel)
    out[:, 1, :] = _convolve_rows(-xs * C - S, kernel)

    numerator = xs * S - C
    numerator[:, 0] += 1.0
    # 常数项恒为零，除以 ω 即整体降一次
    b3 = order.kappa * numerator[:, 1:]
    out[:, 2, : b3.shape[1]] = b3
    return out


def taylor_row(sample: BearingSample, order: ExpansionOrder, tau: float) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """
    单个样本的 (b1, b2, b3)

    Args:
        sample: 方位样本
        order: 展开阶数
        tau: 尺度时间常数（秒），须为正

    Returns:
        三个 ω 的多项式，名义次数均为 order.row_degree

    Raises:
        ValueError: tau ≤ 0 或 tau_i < 0
    """
    if not tau > 0:
        raise ValueError(f"tau 必须为正: {tau}")
    if sample.tau_i < 0:
        raise ValueError(f"tau_i 必须非负: {sample.tau_i}")
    coeffs = taylor_coefficients([sample.x], [sample.tau_i], ExpansionOrder.parse(order), tau)[0]
    return Polynomial(coeffs[0]), Polynomial(coeffs[1]), Polynomial(coeffs[2])
