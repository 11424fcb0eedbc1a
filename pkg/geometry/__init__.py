# -*- coding: utf-8 -*-
"""
几何模块

阿克曼圆弧运动的精确运动学：相对位姿、水平方位投影与入射系数。
"""

from .ackermann import (
    AckermannParams,
    DegenerateScale,
    PlanarPose,
    PointBehindCamera,
    WorldPoint2D,
    exact_incidence_matrix,
    exact_incidence_row,
    project_bearing,
    relative_pose,
)

__all__ = [
    "AckermannParams",
    "DegenerateScale",
    "PlanarPose",
    "PointBehindCamera",
    "WorldPoint2D",
    "exact_incidence_matrix",
    "exact_incidence_row",
    "project_bearing",
    "relative_pose",
]
