#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
角速度估计 HTTP 服务
提供单轨迹求解、窗口估计与轨迹积分接口
"""

from __future__ import annotations

import logging
import traceback
from typing import Any

from flask import Flask, jsonify, request
from flask_cors import CORS
from werkzeug.exceptions import HTTPException

from config.constants import DEFAULT_ORDER, LOG_FORMAT, LOG_LEVEL, OMEGA_MAX, SERVER_HOST, SERVER_PORT, SUPPORTED_ORDERS
from pipeline import (
    CameraIntrinsics,
    WindowConfig,
    WindowEstimate,
    estimate_windows,
    integrate_trajectory,
    tracks_from_records,
)
from robust import VoteConfig
from solver import BearingSample, SolverConfig, solve_omega

logger = logging.getLogger(__name__)

app = Flask(__name__)
CORS(app)


# ========== 响应封装 ==========
def _ok(data: Any):
    return jsonify({"success": True, "data": data})


def _fail(message: str, status: int):
    return jsonify({"success": False, "error": message}), status


@app.errorhandler(ValueError)
@app.errorhandler(KeyError)
@app.errorhandler(TypeError)
def handle_input_error(e):
    logger.warning(f"⚠️ 请求参数错误: {e}")
    return _fail(str(e), 400)


@app.errorhandler(ArithmeticError)
@app.errorhandler(RuntimeError)
def handle_numerical_error(e):
    logger.warning(f"⚠️ 数值求解失败: {e}")
    return _fail(str(e), 422)


@app.errorhandler(Exception)
def handle_unexpected(e):
    if isinstance(e, HTTPException):
        return _fail(e.description, e.code)
    logger.error(f"❌ 未处理的异常: {e}")
    traceback.print_exc()
    return _fail(str(e), 500)


def _payload() -> dict:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise ValueError("请求体必须是 JSON 对象")
    return data


# ========== 接口 ==========
@app.route("/api/health", methods=["GET"])
def health_check():
    """健康检查"""
    return jsonify({
        "status": "healthy",
        "message": "角速度估计服务运行正常",
        "orders": list(SUPPORTED_ORDERS),
        "defaultOrder": DEFAULT_ORDER,
    })


@app.route("/api/omega/track", methods=["POST"])
def solve_track():
    """
    单轨迹求解

    请求: {"samples": [[tau_i, x], ...], "order": "s7c6", "tau": 0.3, "omega_max": 3.14, "track_id": ...}
    """
    data = _payload()
    samples = [BearingSample(float(x), float(t)) for t, x in data["samples"]]
    config = SolverConfig(omega_max=float(data.get("omega_max", OMEGA_MAX)))
    estimate = solve_omega(samples, data.get("order", DEFAULT_ORDER), float(data["tau"]), config, data.get("track_id"))
    logger.info(f"✅ 单轨迹求解: ω={estimate.omega:.6f} 候选={estimate.n_candidates}")
    return _ok(estimate.to_dict())


@app.route("/api/omega/windows", methods=["POST"])
def solve_windows():
    """
    窗口估计

    请求: {"tracks": [{"track_id", "events": [[t, u, v, s], ...]}], "intrinsics": {...},
           "order": "s7c6", "window": {"length", "stride", "epoch", "tau"}, "vote": {...}}
    """
    data = _payload()
    intrinsics = CameraIntrinsics.from_dict(data["intrinsics"])
    report = tracks_from_records(data["tracks"], intrinsics)
    window_cfg = WindowConfig(**data.get("window", {}))
    vote_cfg = VoteConfig(**data.get("vote", {}))
    windows = estimate_windows(
        report.tracks,
        intrinsics,
        window_cfg,
        SolverConfig(omega_max=vote_cfg.omega_max),
        vote_cfg,
        order=data.get("order", DEFAULT_ORDER),
    )
    logger.info(f"📥 窗口估计: 轨迹={len(report.tracks)} 丢弃={len(report.dropped)} 窗口={len(windows)}")
    return _ok({
        "windows": [w.to_dict() for w in windows],
        "dropped": report.dropped,
    })


@app.route("/api/trajectory", methods=["POST"])
def trajectory():
    """
    轨迹积分

    请求: {"windows": [{"t_start", "t_end", "omega"}, ...], "scale": 1.0 | [d, ...] | {"t_start": d}}
    """
    data = _payload()
    windows = [
        WindowEstimate(float(w["t_start"]), float(w["t_end"]),
                       None if w.get("omega") is None else float(w["omega"]),
                       int(w.get("inliers", 0)), None)
        for w in data["windows"]
    ]
    scale = data["scale"]
    if isinstance(scale, dict):
        scale = {float(k): float(v) for k, v in scale.items()}
    poses = integrate_trajectory(windows, scale)
    return _ok([p.to_dict() for p in poses])


if __name__ == "__main__":
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
    print("正在启动角速度估计服务...")
    print(f"API 地址: http://localhost:{SERVER_PORT}/api/health")

    app.run(
        host=SERVER_HOST,
        port=SERVER_PORT,
        debug=False
    )
