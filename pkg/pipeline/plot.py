# -*- coding: utf-8 -*-
"""
扫描结果绘图（SVG，不经过 pyplot 全局状态）
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Tuple

import matplotlib
from matplotlib.figure import Figure

ORDER_STYLES = {"s3c2": "o-", "s5c4": "s-", "s7c6": "^-"}

# 固定 SVG 内部 id，只在绘制期间生效
SVG_RC = {"svg.hashsalt": "evo-sweep"}


def plot_sweep(series: Dict[str, List[Tuple[float, float]]], out: str | Path, factor: str = "factor") -> Path:
    """
    各阶数的 mean ε 随因素取值的折线图

    Args:
        series: {阶数: [(取值, mean_eps), ...]}
        out: 输出 SVG 路径
        factor: 横轴名称
    """
    out = Path(out)
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(6, 4))
        ax = fig.subplots()
        for order in sorted(series):
            points = sorted(series[order])
            ax.plot([p[0] for p in points], [p[1] for p in points], ORDER_STYLES.get(order, "-"), label=order)
        ax.set_xlabel(factor)
        ax.set_ylabel("mean ε [rad/s]")
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        fig.savefig(out, format="svg", metadata={"Date": None})
    return out
