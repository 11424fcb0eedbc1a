# -*- coding: utf-8 -*-
"""
因素扫描 - 蒙特卡洛试验、误差聚合与 CSV/TOML 输出
"""

from __future__ import annotations

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import tomli_w

from config.constants import SIM_OMEGA_RANGE, SUPPORTED_ORDERS
from config.loader import normalize_name
from geometry import DegenerateScale
from poly import NumericalBreakdown
from robust import InsufficientConsensus, VoteConfig, histogram_vote
from solver import ExpansionOrder, InvalidSamples, NoCandidates, solve_omega
from .scene import RejectionExhausted, SceneConfig, generate_scene, omega_error

logger = logging.getLogger(__name__)

SWEEP_HEADER = ["factor_value", "order", "mean_eps", "trials", "failures"]

# 仿真场景中没有离群轨迹，共识下限取 1
SIM_VOTE_CONFIG = VoteConfig(min_inliers=1)


class SweepFactor(str, Enum):
    """扫描因素"""
    TAU = "tau"
    NOISE = "noise"
    INTERVAL = "interval"
    LANDMARKS = "landmarks"
    FOCAL = "focal"
    DEPTH = "depth"

    @classmethod
    def parse(cls, value: "SweepFactor | str") -> "SweepFactor":
        if isinstance(value, cls):
            return value
        return cls(normalize_name(value, [f.value for f in cls]))

    def apply(self, base: SceneConfig, value: float) -> SceneConfig:
        """将因素取值写入场景配置"""
        if self is SweepFactor.TAU:
            return replace(base, tau=float(value))
        if self is SweepFactor.NOISE:
            return replace(base, noise_sigma=float(value))
        if self is SweepFactor.INTERVAL:
            return replace(base, window=float(value))
        if self is SweepFactor.LANDMARKS:
            return replace(base, n_landmarks=int(value))
        if self is SweepFactor.FOCAL:
            return replace(base, focal=float(value))
        return replace(base, depth_mean=float(value))


DEFAULT_SWEEP_VALUES: Dict[SweepFactor, Tuple[float, ...]] = {
    SweepFactor.TAU: (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0),
    SweepFactor.NOISE: (0, 1, 2, 3, 4, 5, 6, 7, 8),
    SweepFactor.INTERVAL: (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45),
    SweepFactor.LANDMARKS: (3, 5, 10, 15, 20, 25, 30, 40, 50),
    SweepFactor.FOCAL: (100, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 1100),
    SweepFactor.DEPTH: (10, 12, 14, 16, 18, 20),
}

# 仅能从图中读出的取值范围
FIGURE_DERIVED = {SweepFactor.TAU, SweepFactor.LANDMARKS, SweepFactor.DEPTH}


@dataclass
class SweepResult:
    """扫描结果，以 (因素取值, 阶数) 为键"""
    factor: SweepFactor
    values: Tuple[float, ...]
    orders: Tuple[ExpansionOrder, ...]
    base: SceneConfig
    mean_eps: Dict[Tuple[float, ExpansionOrder], float] = field(default_factory=dict)
    failures: Dict[Tuple[float, ExpansionOrder], int] = field(default_factory=dict)
    raw: Dict[Tuple[float, ExpansionOrder], List[float]] = field(default_factory=dict)

    def rows(self) -> List[Tuple[float, str, float, int, int]]:
        return [
            (value, order.value, self.mean_eps[(value, order)], self.base.trials, self.failures[(value, order)])
            for value in self.values
            for order in self.orders
        ]

    def series(self, order: ExpansionOrder | str) -> np.ndarray:
        order = ExpansionOrder.parse(order)
        return np.array([self.mean_eps[(v, order)] for v in self.values])

    def metadata(self) -> dict:
        base = {k: v for k, v in asdict(self.base).items() if v is not None}
        return {
            "factor": self.factor.value,
            "values": [float(v) for v in self.values],
            "orders": [o.value for o in self.orders],
            "figure_derived": self.factor in FIGURE_DERIVED,
            "omega_true_distribution": (
                f"pinned:{self.base.omega_true}" if self.base.omega_true is not None
                else f"uniform[-{SIM_OMEGA_RANGE}, {SIM_OMEGA_RANGE}]"
            ),
            "error_metric": "abs(omega_rec - omega_gt)",
            "vote": asdict(SIM_VOTE_CONFIG),
            "base_config": base,
        }


def run_trial(
    config: SceneConfig,
    value_index: int,
    trial: int,
    orders: Sequence[ExpansionOrder],
    vote: VoteConfig = SIM_VOTE_CONFIG,
) -> Dict[ExpansionOrder, Optional[float]]:
    """
    单次试验：各阶数共享同一场景

    Returns:
        {阶数: ε}，失败的阶数为 None
    """
    rng = np.random.default_rng([config.seed, value_index, trial])
    try:
        tracks = generate_scene(config, rng)
    except RejectionExhausted as e:
        logger.warning(f"⚠️ 试验 {trial} 场景生成失败: {e}")
        return {order: None for order in orders}

    errors: Dict[ExpansionOrder, Optional[float]] = {}
    omega_true = tracks[0].omega_true
    for order in orders:
        estimates = []
        for track_id, track in enumerate(tracks):
            try:
                estimates.append(solve_omega(track.samples, order, config.solver_tau, track_id=track_id))
            except (InvalidSamples, NoCandidates, NumericalBreakdown, DegenerateScale) as e:
                logger.debug(f"试验 {trial} 轨迹 {track_id} 求解失败: {e}")
        if not estimates:
            logger.warning(f"⚠️ 试验 {trial} 阶数 {order.value} 没有可用轨迹")
            errors[order] = None
            continue
        try:
            result = histogram_vote(estimates, vote)
        except InsufficientConsensus as e:
            logger.warning(f"⚠️ 试验 {trial} 阶数 {order.value} 投票失败: {e}")
            errors[order] = None
            continue
        errors[order] = omega_error(result.omega_consensus, omega_true)
    return errors


def _run_trial_args(args):
    return run_trial(*args)


def run_sweep(
    factor: SweepFactor | str,
    values: Optional[Sequence[float]] = None,
    base: Optional[SceneConfig] = None,
    orders: Optional[Sequence[ExpansionOrder | str]] = None,
    workers: int = 1,
    keep_raw: bool = False,
) -> SweepResult:
    """
    因素扫描

    Args:
        factor: 扫描因素
        values: 因素取值，默认 DEFAULT_SWEEP_VALUES
        base: 基础场景配置
        orders: 展开阶数列表，默认三种全部
        workers: 进程数，1 表示串行
        keep_raw: 是否保留逐次试验误差

    Returns:
        SweepResult（失败试验计入 failures，不参与均值）

    Raises:
        ValueError: values 为空
    """
    factor = SweepFactor.parse(factor)
    values = tuple(DEFAULT_SWEEP_VALUES[factor] if values is None else values)
    if not values:
        raise ValueError("扫描取值不能为空")
    base = base or SceneConfig()
    orders = tuple(ExpansionOrder.parse(o) for o in (orders or SUPPORTED_ORDERS))

    result = SweepResult(factor, values, orders, base)
    logger.info(f"📅 开始扫描: factor={factor.value} values={len(values)} trials={base.trials} workers={workers}")

    for value_index, value in enumerate(values):
        config = factor.apply(base, value)
        jobs = [(config, value_index, trial, orders) for trial in range(config.trials)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_run_trial_args, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
        else:
            outcomes = [_run_trial_args(job) for job in jobs]

        for order in orders:
            errs = [o[order] for o in outcomes if o[order] is not None]
            result.failures[(value, order)] = len(outcomes) - len(errs)
            result.mean_eps[(value, order)] = float(np.mean(errs)) if errs else math.nan
            if keep_raw:
                result.raw[(value, order)] = errs
        logger.info(
            f"✅ {factor.value}={value}: "
            + ", ".join(f"{o.value}={result.mean_eps[(value, o)]:.3e}" for o in orders)
        )
    return result


def check_expected_trends(result: SweepResult) -> List[str]:
    """
    定性趋势软检查，返回不满足项的描述（同时记 WARNING 日志）
    """
    notes: List[str] = []
    orders = set(result.orders)
    s3, s5, s7 = ExpansionOrder.S3C2, ExpansionOrder.S5C4, ExpansionOrder.S7C6

    if {s3, s5, s7} <= orders and result.factor is not SweepFactor.NOISE:
        for value in result.values:
            e3, e5, e7 = (result.mean_eps[(value, o)] for o in (s3, s5, s7))
            if not e3 >= e5 >= e7:
                notes.append(f"{result.factor.value}={value}: 未满足 s3c2 ≥ s5c4 ≥ s7c6 ({e3:.3e}, {e5:.3e}, {e7:.3e})")

    if result.factor is SweepFactor.NOISE and {s5, s7} <= orders:
        for value in (6, 7, 8):
            if value in result.values and result.mean_eps[(value, s5)] > result.mean_eps[(value, s7)]:
                notes.append(f"noise={value}: s5c4 未优于 s7c6")

    if result.factor is SweepFactor.INTERVAL and s7 in orders:
        picked = [v for v in result.values if 0.05 <= v <= 0.35]
        curve = [result.mean_eps[(v, s7)] for v in picked]
        if any(b >= a for a, b in zip(curve, curve[1:])):
            notes.append("interval: s7c6 误差未随窗口变长严格下降")

    if result.factor is SweepFactor.FOCAL and s7 in orders:
        if 100 in result.values and 500 in result.values:
            if not result.mean_eps[(100, s7)] > 2 * result.mean_eps[(500, s7)]:
                notes.append("focal: ε(100px) 未超过 2×ε(500px)")

    for note in notes:
        logger.warning(f"⚠️ 趋势检查: {note}")
    return notes


def write_sweep(result: SweepResult, path: str | Path) -> Path:
    """
    写出扫描 CSV 与同名 TOML 元数据

    Returns:
        TOML 元数据路径
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for value, order, eps, trials, failures in result.rows():
            writer.writerow([repr(float(value)), order, repr(eps), trials, failures])

    sidecar = path.with_suffix(".toml")
    with sidecar.open("wb") as f:
        tomli_w.dump(result.metadata(), f)
    logger.info(f"✅ 扫描结果已写出: {path}, {sidecar}")
    return sidecar


def read_sweep(path: str | Path) -> Dict[str, List[Tuple[float, float]]]:
    """
    读取扫描 CSV

    Returns:
        {阶数: [(因素取值, mean_eps), ...]}

    Raises:
        ValueError: 表头不符
    """
    series: Dict[str, List[Tuple[float, float]]] = {}
    with Path(path).open(newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != SWEEP_HEADER:
            raise ValueError(f"扫描 CSV 表头不符: {header}")
        for row in reader:
            series.setdefault(row[1], []).append((float(row[0]), float(row[2])))
    return series
