# -*- coding: utf-8 -*-
"""
鲁棒融合模块

直方图投票融合多条轨迹的角速度估计。
"""

from .voting import Histogram, InsufficientConsensus, VoteConfig, VoteResult, histogram_vote

__all__ = [
    "Histogram",
    "InsufficientConsensus",
    "VoteConfig",
    "VoteResult",
    "histogram_vote",
]
