# -*- coding: utf-8 -*-
"""
结果文件读写 - omega / scale / gt / stats / traj CSV 与内参 TOML
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Sequence

import tomli_w

from .evaluation import ErrorStats, GroundTruth
from .tracks import CameraIntrinsics, EmptyInput, ParseError
from .trajectory import TrajectoryPose
from .windows import WindowEstimate, translation_direction

logger = logging.getLogger(__name__)

OMEGA_HEADER = ["t_start", "t_end", "omega", "inliers", "dir_x", "dir_y"]
SCALE_HEADER = ["t_start", "t_end", "d"]
GT_HEADER = ["t", "x", "y", "yaw"]
TRAJECTORY_HEADER = GT_HEADER + ["segment"]
STATS_HEADER = ["mu_eps", "nu_eps", "mu_phi", "nu_phi", "windows", "gaps"]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _read_rows(path: str | Path, header: Sequence[str], convert: Callable[[Dict[str, str], int], object]) -> list:
    """
    读取固定表头的 CSV

    Raises:
        EmptyInput: 文件为空或没有数据行
        ParseError: 表头不符或字段无法解析
    """
    items = []
    with Path(path).open(newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        first = next(reader, None)
        if first is None:
            raise EmptyInput(f"文件为空: {path}")
        if [h.strip() for h in first] != list(header):
            raise ParseError(f"表头应为 {','.join(header)}", 1)
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(f"字段数 {len(row)} != {len(header)}", line)
            record = dict(zip(header, (cell.strip() for cell in row)))
            items.append(convert(record, line))
    if not items:
        raise EmptyInput(f"没有数据行: {path}")
    return items


def _float(record: Dict[str, str], key: str, line: int) -> float:
    try:
        return float(record[key])
    except ValueError as e:
        raise ParseError(f"无法解析数值 {record[key]!r}", line, key) from e


# ---------------------------------------------------------------- omega

def write_omega(estimates: Sequence[WindowEstimate], path: str | Path) -> None:
    """缺口窗口的 omega 与方向字段留空"""
    _write_rows(
        path,
        OMEGA_HEADER,
        (
            (
                w.t_start,
                w.t_end,
                w.omega,
                w.inlier_count,
                None if w.is_gap else w.translation_dir[0],
                None if w.is_gap else w.translation_dir[1],
            )
            for w in sorted(estimates, key=lambda w: w.t_start)
        ),
    )


def read_omega(path: str | Path) -> List[WindowEstimate]:
    def convert(record, line):
        t_start = _float(record, "t_start", line)
        t_end = _float(record, "t_end", line)
        if not record["omega"]:
            return WindowEstimate(t_start, t_end, None, 0, None, gap_reason="缺口")
        omega = _float(record, "omega", line)
        return WindowEstimate(
            t_start,
            t_end,
            omega,
            int(_float(record, "inliers", line)),
            translation_direction(omega, t_end - t_start),
        )

    return _read_rows(path, OMEGA_HEADER, convert)


# ---------------------------------------------------------------- scale

def write_scale(rows: Iterable[Sequence[float]], path: str | Path) -> None:
    _write_rows(path, SCALE_HEADER, rows)


def read_scale(path: str | Path) -> Dict[float, float]:
    """返回 {t_start: d}"""
    rows = _read_rows(
        path, SCALE_HEADER, lambda r, line: (_float(r, "t_start", line), _float(r, "d", line))
    )
    return dict(rows)


# ---------------------------------------------------------------- ground truth / trajectory

def write_poses(poses: Iterable[TrajectoryPose], path: str | Path) -> None:
    _write_rows(path, GT_HEADER, ((p.t, p.x, p.y, p.yaw) for p in poses))


def read_poses(path: str | Path) -> List[TrajectoryPose]:
    return _read_rows(
        path,
        GT_HEADER,
        lambda r, line: TrajectoryPose(*(_float(r, k, line) for k in GT_HEADER)),
    )


def read_ground_truth(path: str | Path) -> GroundTruth:
    return GroundTruth.from_poses(read_poses(path))


def write_trajectory(poses: Iterable[TrajectoryPose], path: str | Path) -> None:
    """积分轨迹，末列为轨迹段编号"""
    _write_rows(path, TRAJECTORY_HEADER, ((p.t, p.x, p.y, p.yaw, p.segment) for p in poses))


def read_trajectory(path: str | Path) -> List[TrajectoryPose]:
    def convert(record, line):
        values = [_float(record, k, line) for k in GT_HEADER]
        try:
            segment = int(record["segment"])
        except ValueError as e:
            raise ParseError(f"无法解析段编号 {record['segment']!r}", line, "segment") from e
        return TrajectoryPose(*values, segment=segment)

    return _read_rows(path, TRAJECTORY_HEADER, convert)


# ---------------------------------------------------------------- stats / intrinsics

def write_stats(stats: ErrorStats, path: str | Path) -> None:
    _write_rows(
        path,
        STATS_HEADER,
        [(stats.mu_eps, stats.nu_eps, stats.mu_phi, stats.nu_phi, stats.windows, stats.gaps)],
    )


def write_intrinsics(intrinsics: CameraIntrinsics, path: str | Path) -> None:
    with Path(path).open("wb") as f:
        tomli_w.dump(intrinsics.to_dict(), f)
    logger.debug(f"写出内参: {path}")
