# -*- coding: utf-8 -*-
"""
事件处理流水线

轨迹读取与归一化、滑动窗口估计、轨迹积分、误差评估与文件读写。
命令行入口见 pipeline.cli（不在此处导入，避免与 sim 循环依赖）。
"""

from .evaluation import CoverageGap, ErrorStats, GroundTruth, evaluate, scale_from_ground_truth
from .tracks import (
    TRACKS_HEADER,
    CameraIntrinsics,
    EmptyInput,
    Event,
    EventTrack,
    Mount,
    ParseError,
    TrackLoadReport,
    TrackValidity,
    load_tracks,
    normalize,
    parse_tracks,
    tracks_from_records,
    write_tracks,
)
from .trajectory import MissingEstimate, MissingScale, TrajectoryPose, integrate_trajectory, resolve_scales
from .windows import WindowConfig, WindowEstimate, estimate_windows, translation_direction

__all__ = [
    "CoverageGap",
    "ErrorStats",
    "GroundTruth",
    "evaluate",
    "scale_from_ground_truth",
    "TRACKS_HEADER",
    "CameraIntrinsics",
    "EmptyInput",
    "Event",
    "EventTrack",
    "Mount",
    "ParseError",
    "TrackLoadReport",
    "TrackValidity",
    "load_tracks",
    "normalize",
    "parse_tracks",
    "tracks_from_records",
    "write_tracks",
    "MissingEstimate",
    "MissingScale",
    "TrajectoryPose",
    "integrate_trajectory",
    "resolve_scales",
    "WindowConfig",
    "WindowEstimate",
    "estimate_windows",
    "translation_direction",
]
