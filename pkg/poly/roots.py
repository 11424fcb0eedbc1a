# -*- coding: utf-8 -*-
"""
实根机制 - 无平方分解、Sturm 序列、根隔离与根细化
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from config.constants import ISOLATION_FLOOR, ROOT_TOL, SQUARE_FREE_RTOL, TRIM_TOL
from .polynomial import Polynomial

logger = logging.getLogger(__name__)


class NumericalBreakdown(ArithmeticError):
    """Sturm 余式首项系数塌缩，多项式病态"""
    pass


class NoSignChange(ValueError):
    """区间端点同号，无法括住根"""
    pass


@dataclass(frozen=True)
class RootInterval:
    """单个根的隔离区间 (lo, hi]"""
    lo: float
    hi: float
    value: Optional[float] = None
    multiplicity: int = 1

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass
class RootSet:
    """按位置排序的隔离区间集合"""
    roots: List[RootInterval] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def values(self) -> List[float]:
        return [r.value for r in self.roots if r.value is not None]


def _remainder(dividend: Polynomial, divisor: Polynomial, tol: float = TRIM_TOL) -> Polynomial:
    """
    带舍入感知的余式：以 max(|a|, |q|·|b|) 为尺度裁剪首项

    Returns:
        余式（完全落在阈值以下时为零多项式）
    """
    q, r = dividend.divmod(divisor)
    scale = max(dividend.max_abs, q.max_abs * divisor.trim().max_abs)
    return r.trim_absolute(tol * scale)


def polynomial_gcd(p: Polynomial, q: Polynomial, tol: float = TRIM_TOL) -> Polynomial:
    """
    欧几里得算法求浮点多项式最大公因式（按 max 范数归一化）

    Args:
        p, q: 非零多项式
        tol: 余式判零的相对容差

    Returns:
        归一化后的最大公因式；互素时为常数 1
    """
    a = p.trim().normalized()
    b = q.trim().normalized()
    if b.is_zero():
        return a
    while b.degree() > 0:
        r = _remainder(a, b, tol)
        if r.is_zero():
            return b
        a, b = b, r.normalized()
    return Polynomial.constant(1.0)


def square_free(p: Polynomial) -> Polynomial:
    """
    无平方部分 p / gcd(p, p')

    Args:
        p: 非零多项式

    Returns:
        根位置相同、重数均为 1 的多项式（归一化）

    Raises:
        ValueError: p 为零多项式
    """
    base = p.trim()
    if base.is_zero():
        raise ValueError("零多项式没有无平方部分")
    if base.degree() <= 1:
        return base.normalized()

    g = polynomial_gcd(base, base.derivative())
    if g.degree() <= 0:
        return base.normalized()

    q, r = base.divmod(g)
    if r.max_abs > SQUARE_FREE_RTOL * base.max_abs:
        # 数值 gcd 不可信，保留原式
        logger.debug(f"⚠️ 无平方分解余数过大，保留原式: deg={base.degree()} gcd_deg={g.degree()}")
        return base.normalized()
    logger.debug(f"无平方分解: deg {base.degree()} → {q.trim().degree()}")
    return q.trim().normalized()


class SturmSequence:
    """
    Sturm 链 p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)

    各项按 max 范数归一化，并以补零矩阵形式保存以便一次性求值。
    """

    def __init__(self, polys: Sequence[Polynomial]):
        self.polys = list(polys)
        width = max(s.nominal_degree for s in self.polys) + 1
        table = np.zeros((len(self.polys), width))
        for row, s in enumerate(self.polys):
            table[row, : s.coeffs.size] = s.coeffs
        self._table = table

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, index: int) -> Polynomial:
        return self.polys[index]

    def evaluate(self, x: float) -> np.ndarray:
        """链上各项在 x 处的取值"""
        values = self._table[:, -1].copy()
        for k in range(self._table.shape[1] - 2, -1, -1):
            values = values * x + self._table[:, k]
        return values

    def sign_variations(self, x: float) -> int:
        signs = np.sign(self.evaluate(x))
        signs = signs[signs != 0]
        return int(np.count_nonzero(signs[1:] != signs[:-1]))

    def count(self, lo: float, hi: float) -> int:
        """(lo, hi] 内的不同实根个数"""
        return self.sign_variations(lo) - self.sign_variations(hi)


def sturm_sequence(p: Polynomial, tol: float = TRIM_TOL) -> SturmSequence:
    """
    构造 Sturm 序列

    Args:
        p: 无平方多项式（调用方先做 square_free）
        tol: 余式首项塌缩判定的相对容差

    Returns:
        SturmSequence

    Raises:
        ValueError: p 为零多项式
        NumericalBreakdown: 余式在到达常数前整体塌缩
    """
    head = p.trim()
    if head.is_zero():
        raise ValueError("零多项式不能构造 Sturm 序列")
    chain = [head.normalized()]
    if head.degree() > 0:
        chain.append(head.derivative().trim().normalized())

    while chain[-1].degree() > 0:
        r = _remainder(chain[-2], chain[-1], tol)
        if r.is_zero():
            raise NumericalBreakdown(
                f"Sturm 余式在第 {len(chain)} 项塌缩 (deg p={head.degree()}, "
                f"当前项 deg={chain[-1].degree()})"
            )
        chain.append((-r).normalized())
    return SturmSequence(chain)


def isolate_roots(
    p: Polynomial,
    lo: float,
    hi: float,
    floor: float = ISOLATION_FLOOR,
    sequence: Optional[SturmSequence] = None,
) -> RootSet:
    """
    基于 Sturm 计数的二分根隔离

    Args:
        p: 无平方多项式
        lo, hi: 搜索区间，lo < hi；计数区间为 (lo, hi]
        floor: 最小区间宽度
        sequence: 预先构造的 Sturm 序列（可选）

    Returns:
        RootSet（仅区间，value 为 None）

    Raises:
        ValueError: lo >= hi
        NumericalBreakdown: Sturm 序列构造失败
    """
    if not lo < hi:
        raise ValueError(f"非法区间: ({lo}, {hi})")
    seq = sequence or sturm_sequence(p)

    found: List[RootInterval] = []
    stack: List[Tuple[float, float, int, int]] = [(lo, hi, seq.sign_variations(lo), seq.sign_variations(hi))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count <= 0:
            continue
        if count == 1 or (b - a) < floor:
            found.append(RootInterval(a, b, None, multiplicity=count))
            continue
        mid = 0.5 * (a + b)
        vm = seq.sign_variations(mid)
        stack.append((mid, b, vm, vb))
        stack.append((a, mid, va, vm))

    found.sort(key=lambda r: r.lo)
    logger.debug(f"根隔离: 区间=({lo:.6g}, {hi:.6g}] 找到 {len(found)} 个")
    return RootSet(found)


def refine_root(p: Polynomial, interval: RootInterval | Tuple[float, float], tol: float = ROOT_TOL) -> float:
    """
    括号法细化单根，随后做一次受保护的 Newton 修正

    Args:
        p: 多项式
        interval: RootInterval 或 (lo, hi)，按 (lo, hi] 处理
        tol: 区间宽度容差（变量自身单位）

    Returns:
        区间内的根

    Raises:
        NoSignChange: 端点同号
    """
    if isinstance(interval, RootInterval):
        a, b = interval.lo, interval.hi
    else:
        a, b = interval
    fa, fb = p(a), p(b)
    if fb == 0.0:
        return float(b)
    # 左端点不属于 (a, b]，恰为根时向内挪一步
    for _ in range(64):
        if fa != 0.0:
            break
        a = float(np.nextafter(a, b))
        fa = p(a)
    if fa == 0.0 or np.sign(fa) == np.sign(fb):
        raise NoSignChange(f"端点同号: p({a:.6g})={fa:.3g}, p({b:.6g})={fb:.3g}")

    x = brentq(p.eval, a, b, xtol=tol, rtol=4 * np.finfo(float).eps)

    slope = p.derivative()(x)
    fx = p(x)
    if slope != 0.0 and np.isfinite(slope):
        candidate = x - fx / slope
        if a <= candidate <= b and abs(p(candidate)) <= abs(fx):
            x = candidate
    return float(x)


def real_roots(p: Polynomial, lo: float, hi: float, tol: float = ROOT_TOL) -> RootSet:
    """
    square_free → 隔离 → 细化 的组合流程

    Returns:
        RootSet；端点同号而无法细化的区间保留，value 为 None

    Raises:
        NumericalBreakdown: Sturm 序列构造失败
    """
    sf = square_free(p)
    if sf.degree() <= 0:
        return RootSet()
    isolated = isolate_roots(sf, lo, hi)
    refined: List[RootInterval] = []
    for iv in isolated:
        try:
            value = refine_root(sf, iv, tol)
        except NoSignChange as e:
            logger.warning(f"⚠️ 根区间无法括住，未细化: {e}")
            value = None
        refined.append(RootInterval(iv.lo, iv.hi, value, iv.multiplicity))
    return RootSet(refined)
