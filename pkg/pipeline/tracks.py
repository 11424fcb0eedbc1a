# -*- coding: utf-8 -*-
"""
轨迹输入 - 相机内参、事件轨迹 CSV 读写与像素到方位的归一化
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from config.constants import TRACK_MAX_DURATION, TRACK_MIN_DURATION, TRACK_MIN_EVENTS
from config.loader import load_toml, normalize_name, require_keys
from solver import BearingSample

logger = logging.getLogger(__name__)

TRACKS_HEADER = ["track_id", "t", "u", "v", "polarity"]


class ParseError(ValueError):
    """输入文件格式错误（带行号与列名）"""

    def __init__(self, message: str, line: int, column: str | None = None):
        where = f"第 {line} 行" + (f" 列 {column}" if column else "")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class EmptyInput(ValueError):
    """输入文件没有数据行"""
    pass


class Mount(str, Enum):
    """相机坐标系约定"""
    VEHICLE = "vehicle"
    OPTICAL = "optical"


@dataclass(frozen=True)
class CameraIntrinsics:
    """水平方向相机内参"""
    focal: float
    principal_x: float
    width: int
    height: int
    mount: Mount = Mount.VEHICLE

    def __post_init__(self):
        if not self.focal > 0:
            raise ValueError(f"focal 必须为正: {self.focal}")
        if not 0 <= self.principal_x <= self.width:
            raise ValueError(f"principal_x={self.principal_x} 不在图像宽度 [0, {self.width}] 内")
        if self.height <= 0:
            raise ValueError(f"height 必须为正: {self.height}")

    @classmethod
    def from_dict(cls, data: dict) -> "CameraIntrinsics":
        require_keys(data, ["focal", "cx", "width", "height"], "(intrinsics)")
        mount = normalize_name(data.get("mount"), [m.value for m in Mount], default=Mount.VEHICLE.value)
        return cls(float(data["focal"]), float(data["cx"]), int(data["width"]), int(data["height"]), Mount(mount))

    @classmethod
    def from_toml(cls, path: str | Path) -> "CameraIntrinsics":
        """
        读取内参 TOML（键: focal, cx, width, height, mount）

        Raises:
            ConfigError: 文件缺失或缺字段
        """
        return cls.from_dict(load_toml(path))

    def to_dict(self) -> dict:
        return {
            "focal": self.focal,
            "cx": self.principal_x,
            "width": self.width,
            "height": self.height,
            "mount": self.mount.value,
        }

    def crop(self, x0: float, width: int, height: Optional[int] = None) -> "CameraIntrinsics":
        """
        图像左侧裁去 x0 像素后的内参（焦距不变，主点平移）

        Args:
            x0: 裁剪起点列
            width: 裁剪后宽度
            height: 裁剪后高度，默认不变
        """
        return replace(
            self,
            principal_x=self.principal_x - x0,
            width=int(width),
            height=self.height if height is None else int(height),
        )

    def bearing(self, u: float) -> float:
        # 光学系 x 轴与车辆系 x 轴一致（前视相机，光轴 z 对应车辆 y）
        return (u - self.principal_x) / self.focal

    def pixel(self, x: float) -> float:
        return x * self.focal + self.principal_x


@dataclass(frozen=True)
class Event:
    """单个事件；极性仅作记录"""
    u: float
    v: float
    t: float
    s: int


@dataclass(frozen=True)
class EventTrack:
    """按时间严格递增的事件轨迹"""
    track_id: str
    events: tuple

    @property
    def t_start(self) -> float:
        return self.events[0].t

    @property
    def t_end(self) -> float:
        return self.events[-1].t

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def __len__(self) -> int:
        return len(self.events)

    def clip(self, t_start: float, t_end: float) -> "EventTrack":
        """保留 [t_start, t_end) 内的事件"""
        return EventTrack(self.track_id, tuple(e for e in self.events if t_start <= e.t < t_end))


@dataclass(frozen=True)
class TrackValidity:
    """轨迹有效性范围"""
    min_duration: float = TRACK_MIN_DURATION
    max_duration: float = TRACK_MAX_DURATION
    min_events: int = TRACK_MIN_EVENTS

    def reason(self, track: EventTrack) -> Optional[str]:
        """不满足时返回原因，满足时返回 None"""
        if len(track) < self.min_events:
            return f"事件数 {len(track)} < {self.min_events}"
        if not self.min_duration <= track.duration <= self.max_duration:
            return f"时长 {track.duration:.4f}s 不在 [{self.min_duration}, {self.max_duration}]"
        return None


@dataclass
class TrackLoadReport:
    """读取报告：输入总数 = 保留数 + 丢弃数"""
    tracks: List[EventTrack] = field(default_factory=list)
    dropped: Dict[str, str] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.tracks) + len(self.dropped)


def _parse_float(raw: str, line: int, column: str) -> float:
    try:
        return float(raw)
    except ValueError as e:
        raise ParseError(f"无法解析数值 {raw!r}", line, column) from e


def load_tracks(
    path: str | Path,
    intrinsics: CameraIntrinsics,
    validity: Optional[TrackValidity] = None,
) -> TrackLoadReport:
    """
    读取事件轨迹 CSV 并按有效性筛选

    Args:
        path: CSV 路径，表头 track_id,t,u,v,polarity
        intrinsics: 相机内参（用于像素范围检查）
        validity: 有效性范围，默认 TrackValidity()

    Returns:
        TrackLoadReport

    Raises:
        ParseError: 表头或数据行格式错误
        EmptyInput: 没有数据行
    """
    validity = validity or TrackValidity()
    grouped: Dict[str, List[Event]] = {}

    with Path(path).open(newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise EmptyInput(f"文件为空: {path}")
        if [h.strip() for h in header] != TRACKS_HEADER:
            raise ParseError(f"表头应为 {','.join(TRACKS_HEADER)}，实际为 {','.join(header)}", 1)

        for line, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(TRACKS_HEADER):
                raise ParseError(f"字段数 {len(row)} != {len(TRACKS_HEADER)}", line)
            track_id = row[0].strip()
            if not track_id:
                raise ParseError("track_id 为空", line, "track_id")
            t = _parse_float(row[1], line, "t")
            u = _parse_float(row[2], line, "u")
            v = _parse_float(row[3], line, "v")
            polarity = _parse_float(row[4], line, "polarity")
            if not 0 <= u < intrinsics.width:
                raise ParseError(f"u={u} 超出图像宽度 {intrinsics.width}", line, "u")
            if not 0 <= v < intrinsics.height:
                raise ParseError(f"v={v} 超出图像高度 {intrinsics.height}", line, "v")
            if polarity not in (-1.0, 1.0):
                raise ParseError(f"极性必须为 ±1: {row[4]}", line, "polarity")
            grouped.setdefault(track_id, []).append(Event(u, v, t, int(polarity)))

    if not grouped:
        raise EmptyInput(f"没有事件数据: {path}")

    report = TrackLoadReport()
    for track_id, events in grouped.items():
        events.sort(key=lambda e: e.t)
        if any(b.t <= a.t for a, b in zip(events, events[1:])):
            report.dropped[track_id] = "时间戳未严格递增"
            continue
        track = EventTrack(track_id, tuple(events))
        reason = validity.reason(track)
        if reason:
            report.dropped[track_id] = reason
        else:
            report.tracks.append(track)

    for track_id, reason in report.dropped.items():
        logger.debug(f"丢弃轨迹 {track_id}: {reason}")
    logger.info(f"📥 读取轨迹: 总数={report.total} 保留={len(report.tracks)} 丢弃={len(report.dropped)}")
    return report


def parse_tracks(
    path: str | Path,
    intrinsics: CameraIntrinsics,
    validity: Optional[TrackValidity] = None,
) -> List[EventTrack]:
    """读取并返回有效轨迹，丢弃明细见 load_tracks"""
    return load_tracks(path, intrinsics, validity).tracks


def normalize(track: EventTrack, intrinsics: CameraIntrinsics, t0: Optional[float] = None) -> List[BearingSample]:
    """
    像素到方位：x = (u − c_x)/f，τ_i = t_i − t0

    Args:
        track: 事件轨迹
        intrinsics: 相机内参
        t0: 窗口起点，默认轨迹首个事件时间
    """
    origin = track.t_start if t0 is None else t0
    return [BearingSample(intrinsics.bearing(e.u), e.t - origin) for e in track.events]


def write_tracks(tracks: Iterable[EventTrack], path: str | Path) -> None:
    """写出事件轨迹 CSV"""
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRACKS_HEADER)
        for track in tracks:
            for e in track.events:
                writer.writerow([track.track_id, repr(e.t), repr(e.u), repr(e.v), e.s])


def tracks_from_records(records: Sequence[dict], intrinsics: CameraIntrinsics,
                        validity: Optional[TrackValidity] = None) -> TrackLoadReport:
    """
    由 JSON 记录构造轨迹（HTTP 接口使用）

    Args:
        records: [{"track_id": ..., "events": [[t, u, v, s], ...]}, ...]
    """
    validity = validity or TrackValidity()
    report = TrackLoadReport()
    for record in records:
        track_id = str(record["track_id"])
        events = sorted((Event(float(u), float(v), float(t), int(s)) for t, u, v, s in record["events"]),
                        key=lambda e: e.t)
        if any(not 0 <= e.u < intrinsics.width for e in events):
            report.dropped[track_id] = "u 超出图像宽度"
            continue
        if any(b.t <= a.t for a, b in zip(events, events[1:])):
            report.dropped[track_id] = "时间戳未严格递增"
            continue
        track = EventTrack(track_id, tuple(events))
        reason = validity.reason(track) if events else "没有事件"
        if reason:
            report.dropped[track_id] = reason
        else:
            report.tracks.append(track)
    return report
