# -*- coding: utf-8 -*-
"""
多项式模块

稠密一元多项式运算与实根机制（Sturm 序列、根隔离与细化）。
"""

from .polynomial import Polynomial, add, mul, scale, sub
from .roots import (
    NoSignChange,
    NumericalBreakdown,
    RootInterval,
    RootSet,
    SturmSequence,
    isolate_roots,
    polynomial_gcd,
    real_roots,
    refine_root,
    square_free,
    sturm_sequence,
)

__all__ = [
    "Polynomial",
    "add",
    "sub",
    "mul",
    "scale",
    "NoSignChange",
    "NumericalBreakdown",
    "RootInterval",
    "RootSet",
    "SturmSequence",
    "isolate_roots",
    "polynomial_gcd",
    "real_roots",
    "refine_root",
    "square_free",
    "sturm_sequence",
]
