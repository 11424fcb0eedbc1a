# -*- coding: utf-8 -*-
"""
命令行入口

子命令：simulate / solve / trajectory / evaluate / plot / synth / serve
退出码：0 成功，1 用法错误，2 输入错误，3 数值失败
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import tomli_w

from config.constants import (
    DEFAULT_ORDER,
    LOG_FORMAT,
    LOG_LEVEL,
    OMEGA_MAX,
    SERVER_HOST,
    SERVER_PORT,
    SIM_SEED,
    SIM_TRIALS,
    SUPPORTED_ORDERS,
    VOTE_BIN_WIDTH,
    VOTE_MIN_INLIERS,
    WINDOW_EPOCH,
    WINDOW_LENGTH,
    WINDOW_STRIDE,
)
from robust import VoteConfig
from solver import SolverConfig
from . import io
from .evaluation import GroundTruth, evaluate, scale_from_ground_truth
from .plot import plot_sweep
from .tracks import CameraIntrinsics, load_tracks, write_tracks
from .trajectory import integrate_trajectory
from .windows import WindowConfig, estimate_windows

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    """命令行用法错误"""
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _csv_list(raw: str) -> List[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def _floats(raw: str) -> List[float]:
    try:
        return [float(v) for v in _csv_list(raw)]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"无法解析数值列表: {raw}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evo", description="事件相机阿克曼角速度估计")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出 DEBUG 日志")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="蒙特卡洛因素扫描")
    p.add_argument("--factor", required=True, choices=["tau", "noise", "interval", "landmarks", "focal", "depth"])
    p.add_argument("--orders", default=",".join(SUPPORTED_ORDERS))
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--trials", type=int, default=SIM_TRIALS)
    p.add_argument("--seed", type=int, default=SIM_SEED)
    p.add_argument("--values", type=_floats, default=None, help="逗号分隔的因素取值")
    p.add_argument("--omega", type=float, default=None, help="固定真值角速度")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("solve", help="逐窗口估计角速度")
    p.add_argument("--tracks", required=True, type=Path)
    p.add_argument("--intrinsics", required=True, type=Path)
    p.add_argument("--order", default=DEFAULT_ORDER, choices=SUPPORTED_ORDERS)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--window", type=float, default=WINDOW_LENGTH)
    p.add_argument("--stride", type=float, default=WINDOW_STRIDE)
    p.add_argument("--epoch", type=float, default=WINDOW_EPOCH)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--omega-max", type=float, default=OMEGA_MAX)
    p.add_argument("--bin-width", type=float, default=VOTE_BIN_WIDTH)
    p.add_argument("--min-inliers", type=int, default=VOTE_MIN_INLIERS)
    p.add_argument("--no-refine", action="store_true")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("trajectory", help="以外部尺度积分轨迹")
    p.add_argument("--omega", required=True, type=Path)
    scale = p.add_mutually_exclusive_group(required=True)
    scale.add_argument("--scale", type=Path)
    scale.add_argument("--scale-constant", type=float)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("evaluate", help="计算 ε/φ 误差统计")
    p.add_argument("--omega", required=True, type=Path)
    p.add_argument("--gt", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("plot", help="绘制扫描结果 SVG")
    p.add_argument("--in", dest="source", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("synth", help="生成合成轨迹、内参、真值与尺度文件")
    p.add_argument("--out-dir", required=True, type=Path)
    p.add_argument("--duration", type=float, default=2.0)
    p.add_argument("--omega", type=float, default=0.3)
    p.add_argument("--speed", type=float, default=5.0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--window", type=float, default=WINDOW_LENGTH)
    p.add_argument("--stride", type=float, default=WINDOW_STRIDE)
    p.add_argument("--seed", type=int, default=SIM_SEED)

    p = sub.add_parser("serve", help="启动 HTTP 服务")
    p.add_argument("--host", default=SERVER_HOST)
    p.add_argument("--port", type=int, default=SERVER_PORT)
    return parser


# ---------------------------------------------------------------- 子命令

def cmd_simulate(args) -> int:
    from sim import SceneConfig, check_expected_trends, run_sweep, write_sweep

    base = SceneConfig(trials=args.trials, seed=args.seed, omega_true=args.omega)
    result = run_sweep(args.factor, args.values, base, _csv_list(args.orders), workers=args.workers)
    check_expected_trends(result)
    write_sweep(result, args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    intrinsics = CameraIntrinsics.from_toml(args.intrinsics)
    report = load_tracks(args.tracks, intrinsics)
    windows = estimate_windows(
        report.tracks,
        intrinsics,
        WindowConfig(args.window, args.stride, args.epoch, tau=args.tau),
        SolverConfig(omega_max=args.omega_max),
        VoteConfig(bin_width=args.bin_width, min_inliers=args.min_inliers,
                   refine=not args.no_refine, omega_max=args.omega_max),
        order=args.order,
        workers=args.workers,
    )
    io.write_omega(windows, args.out)

    summary = {
        "tracks": {"total": report.total, "used": len(report.tracks), "dropped": dict(sorted(report.dropped.items()))},
        "windows": {
            "total": len(windows),
            "gaps": [{"t_start": w.t_start, "t_end": w.t_end, "reason": w.gap_reason} for w in windows if w.is_gap],
        },
    }
    with args.out.with_suffix(".report.toml").open("wb") as f:
        tomli_w.dump(summary, f)
    return EXIT_OK


def cmd_trajectory(args) -> int:
    windows = io.read_omega(args.omega)
    scale = args.scale_constant if args.scale is None else io.read_scale(args.scale)
    io.write_trajectory(integrate_trajectory(windows, scale), args.out)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    stats = evaluate(io.read_omega(args.omega), io.read_ground_truth(args.gt))
    io.write_stats(stats, args.out)
    return EXIT_OK


def cmd_plot(args) -> int:
    from sim import read_sweep

    factor = args.source.stem
    sidecar = args.source.with_suffix(".toml")
    if sidecar.is_file():
        from config.loader import load_toml
        factor = load_toml(sidecar).get("factor", factor)
    plot_sweep(read_sweep(args.source), args.out, factor)
    return EXIT_OK


def cmd_synth(args) -> int:
    from sim import SequenceConfig, simulate_sequence

    config = SequenceConfig(duration=args.duration, omega=args.omega, speed=args.speed, noise_sigma=args.noise)
    sequence = simulate_sequence(config, np.random.default_rng(args.seed))
    out_dir = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    write_tracks(sequence.tracks, out_dir / "tracks.csv")
    io.write_intrinsics(sequence.intrinsics, out_dir / "cam.toml")
    io.write_poses(sequence.ground_truth, out_dir / "gt.csv")

    window_cfg = WindowConfig(args.window, args.stride)
    t_min = min(t.t_start for t in sequence.tracks)
    t_max = max(t.t_end for t in sequence.tracks)
    bounds = window_cfg.bounds(t_min, t_max)
    io.write_scale(scale_from_ground_truth(bounds, GroundTruth.from_poses(sequence.ground_truth)), out_dir / "scale.csv")
    return EXIT_OK


def cmd_serve(args) -> int:
    from simple_server import app

    app.run(host=args.host, port=args.port, debug=False)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "solve": cmd_solve,
    "trajectory": cmd_trajectory,
    "evaluate": cmd_evaluate,
    "plot": cmd_plot,
    "synth": cmd_synth,
    "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行主函数

    Args:
        argv: 参数列表，默认 sys.argv[1:]

    Returns:
        退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    logging.basicConfig(level="DEBUG" if args.verbose else LOG_LEVEL, format=LOG_FORMAT, stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (ArithmeticError, RuntimeError) as e:
        logger.error(f"❌ 数值失败: {e}")
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as e:
        logger.error(f"❌ 输入错误: {e}")
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
