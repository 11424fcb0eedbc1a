# -*- coding: utf-8 -*-
"""
求解器模块

泰勒展开入射行、测量矩阵、Gram 行列式目标与单轨迹角速度求解。
"""

from .expansion import BearingSample, ExpansionOrder, multiplier, taylor_row
from .matrix import (
    DuplicateTimestamp,
    InvalidSamples,
    MeasurementMatrix,
    PolyMatrix3,
    TooFewSamples,
    build_matrix,
    det_poly,
    gram,
)
from .one_track import (
    DegenerateNullspace,
    NoCandidates,
    OmegaEstimate,
    SolverConfig,
    StructureEstimate,
    recover_structure,
    smallest_singular_value,
    solve_omega,
)

__all__ = [
    "BearingSample",
    "ExpansionOrder",
    "multiplier",
    "taylor_row",
    "DuplicateTimestamp",
    "InvalidSamples",
    "MeasurementMatrix",
    "PolyMatrix3",
    "TooFewSamples",
    "build_matrix",
    "det_poly",
    "gram",
    "DegenerateNullspace",
    "NoCandidates",
    "OmegaEstimate",
    "SolverConfig",
    "StructureEstimate",
    "recover_structure",
    "smallest_singular_value",
    "solve_omega",
]
