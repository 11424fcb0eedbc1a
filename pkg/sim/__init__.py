# -*- coding: utf-8 -*-
"""
仿真模块

合成场景生成、蒙特卡洛因素扫描与多窗口合成行驶序列。
"""

from .scene import RejectionExhausted, SceneConfig, SyntheticTrack, generate_scene, omega_error
from .sequence import SequenceConfig, SyntheticSequence, simulate_sequence, vehicle_pose
from .sweep import (
    DEFAULT_SWEEP_VALUES,
    FIGURE_DERIVED,
    SweepFactor,
    SweepResult,
    check_expected_trends,
    read_sweep,
    run_sweep,
    run_trial,
    write_sweep,
)

__all__ = [
    "RejectionExhausted",
    "SceneConfig",
    "SyntheticTrack",
    "generate_scene",
    "omega_error",
    "SequenceConfig",
    "SyntheticSequence",
    "simulate_sequence",
    "vehicle_pose",
    "DEFAULT_SWEEP_VALUES",
    "FIGURE_DERIVED",
    "SweepFactor",
    "SweepResult",
    "check_expected_trends",
    "read_sweep",
    "run_sweep",
    "run_trial",
    "write_sweep",
]
