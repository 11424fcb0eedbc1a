# -*- coding: utf-8 -*-
"""
稠密一元多项式 - 升幂系数向量上的四则运算、求值与求导

系数长度即名义次数（nominal degree）：乘法按卷积保留全部系数，不自动裁剪，
degree() 返回按相对容差裁剪后的实际次数。
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np
import numpy.polynomial.polynomial as npoly

from config.constants import TRIM_TOL

Scalar = Union[int, float, np.floating]


class Polynomial:
    """
    稠密实系数多项式（升幂存储，不可变）

    零多项式以 coeffs == [0.0] 表示，其 degree() 为 -1。
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[float] | np.ndarray):
        arr = np.array(coeffs, dtype=float).ravel()
        if arr.size == 0:
            arr = np.zeros(1)
        arr.setflags(write=False)
        self._coeffs = arr

    # ---------------------------------------------------------------- 构造
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls([0.0])

    @classmethod
    def constant(cls, value: float) -> "Polynomial":
        return cls([value])

    @classmethod
    def from_roots(cls, roots: Iterable[float]) -> "Polynomial":
        return cls(npoly.polyfromroots(list(roots)))

    # ---------------------------------------------------------------- 属性
    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def nominal_degree(self) -> int:
        """系数向量长度减一"""
        return self._coeffs.size - 1

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self._coeffs)))

    def is_zero(self) -> bool:
        return not np.any(self._coeffs)

    def trim(self, tol: float = TRIM_TOL) -> "Polynomial":
        """
        裁剪首项：|c| < tol·max|coeffs| 的高次系数视为零

        Args:
            tol: 相对容差

        Returns:
            裁剪后的多项式（全部低于阈值时为零多项式）
        """
        scale = self.max_abs
        if scale == 0.0:
            return Polynomial.zero()
        keep = np.nonzero(np.abs(self._coeffs) >= tol * scale)[0]
        return Polynomial(self._coeffs[: keep[-1] + 1])

    def trim_absolute(self, threshold: float) -> "Polynomial":
        """按绝对阈值裁剪首项"""
        keep = np.nonzero(np.abs(self._coeffs) > threshold)[0]
        if keep.size == 0:
            return Polynomial.zero()
        return Polynomial(self._coeffs[: keep[-1] + 1])

    def degree(self) -> int:
        """裁剪后的次数，零多项式为 -1"""
        trimmed = self.trim()
        return -1 if trimmed.is_zero() else trimmed.nominal_degree

    def normalized(self) -> "Polynomial":
        """除以 max|coeffs|（正数缩放，不改变符号与根）"""
        scale = self.max_abs
        if scale == 0.0:
            return self
        return Polynomial(self._coeffs / scale)

    # ---------------------------------------------------------------- 运算
    def _pad(self, other: "Polynomial"):
        n = max(self._coeffs.size, other._coeffs.size)
        a = np.zeros(n)
        b = np.zeros(n)
        a[: self._coeffs.size] = self._coeffs
        b[: other._coeffs.size] = other._coeffs
        return a, b

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if np.isscalar(other):
            return Polynomial.constant(float(other))
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._pad(other)
        return Polynomial(a + b)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._pad(other)
        return Polynomial(a - b)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self._coeffs)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return Polynomial(np.convolve(self._coeffs, other._coeffs))
        if np.isscalar(other):
            return Polynomial(self._coeffs * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "Polynomial":
        """数乘"""
        return self * float(factor)

    def substitute_scale(self, factor: float) -> "Polynomial":
        """
        变量缩放：返回 q(u) = p(factor·u)

        Args:
            factor: 缩放因子

        Returns:
            第 k 项系数乘以 factor^k 的多项式
        """
        powers = float(factor) ** np.arange(self._coeffs.size)
        return Polynomial(self._coeffs * powers)

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Horner 求值，支持标量或数组"""
        value = npoly.polyval(x, self._coeffs)
        return float(value) if np.ndim(value) == 0 else value

    def derivative(self) -> "Polynomial":
        if self._coeffs.size <= 1:
            return Polynomial.zero()
        return Polynomial(npoly.polyder(self._coeffs))

    def divmod(self, divisor: "Polynomial"):
        """
        多项式带余除法

        Args:
            divisor: 除式（自动裁剪首项，不得为零）

        Returns:
            (商, 余式)

        Raises:
            ZeroDivisionError: 除式为零多项式
        """
        d = divisor.trim()
        if d.is_zero():
            raise ZeroDivisionError("多项式除以零多项式")
        q, r = npoly.polydiv(self.trim()._coeffs, d._coeffs)
        return Polynomial(q), Polynomial(r)

    # ---------------------------------------------------------------- 比较
    def allclose(self, other: "Polynomial", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        a, b = self._pad(other)
        scale = max(self.max_abs, other.max_abs, 1e-300)
        return bool(np.all(np.abs(a - b) <= atol + rtol * scale))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._pad(other)
        return bool(np.array_equal(a, b))

    def __hash__(self):
        return hash(self.trim()._coeffs.tobytes())

    def __repr__(self) -> str:
        return f"Polynomial({np.array2string(self._coeffs, precision=6, separator=', ')})"


def add(p: Polynomial, q: Polynomial | Scalar) -> Polynomial:
    return p + q


def sub(p: Polynomial, q: Polynomial | Scalar) -> Polynomial:
    return p - q


def mul(p: Polynomial, q: Polynomial | Scalar) -> Polynomial:
    return p * q


def scale(p: Polynomial, factor: Scalar) -> Polynomial:
    return p.scale(factor)
