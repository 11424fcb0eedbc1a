# -*- coding: utf-8 -*-
"""
全局常量配置 - 求解器、投票、窗口化、仿真与服务的默认参数

所有可调参数均可通过环境变量覆盖；内部数值容差不开放覆盖。
"""

import math
import os


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


# ======================== 展开阶数配置 ========================
SUPPORTED_ORDERS = ["s3c2", "s5c4", "s7c6"]
DEFAULT_ORDER = os.getenv("EVO_DEFAULT_ORDER", "s7c6")

# ======================== 求解器配置 ========================
# 角速度搜索上界（rad/s），地面车辆转弯快于 180°/s 不在模型范围内
OMEGA_MAX = float(os.getenv("EVO_OMEGA_MAX", str(math.pi)))
# 根细化容差（以缩放变量 u = ω·T 为单位）
ROOT_TOL = float(os.getenv("EVO_ROOT_TOL", "1e-10"))
# 每次求解的最少样本数
MIN_SAMPLES = 3

# ======================== 数值容差（不开放覆盖） ========================
OMEGA_SWITCH = 1e-7          # |ωτ| 小于该值时使用极限形式
TRIM_TOL = 1e-12             # 多项式首项系数裁剪的相对容差
ISOLATION_FLOOR = 1e-12      # 根隔离区间的最小宽度
TIE_RTOL = 1e-9              # 候选点行列式值并列判定
NULLSPACE_RTOL = 1e-6        # 零空间二义性判定
SQUARE_FREE_RTOL = 1e-8      # 无平方分解时商式余数的接受阈值
PSD_FLOOR = -1e-9            # 半正定残差下限

# ======================== 直方图投票配置 ========================
VOTE_BIN_WIDTH = float(os.getenv("EVO_VOTE_BIN_WIDTH", "0.01"))
VOTE_NEIGHBOR_SPAN = int(os.getenv("EVO_VOTE_NEIGHBOR_SPAN", "1"))
VOTE_MIN_INLIERS = int(os.getenv("EVO_VOTE_MIN_INLIERS", "3"))
VOTE_REFINE = _env_bool("EVO_VOTE_REFINE", True)
VOTE_REFINE_GRID = 65        # 归一化上确界的采样点数

# ======================== 窗口与轨迹有效性配置 ========================
WINDOW_LENGTH = float(os.getenv("EVO_WINDOW_LENGTH", "0.2"))      # seconds
WINDOW_STRIDE = float(os.getenv("EVO_WINDOW_STRIDE", "0.1"))      # seconds
WINDOW_EPOCH = float(os.getenv("EVO_WINDOW_EPOCH", "0.0"))        # seconds
WINDOW_MIN_EVENTS = int(os.getenv("EVO_WINDOW_MIN_EVENTS", "8"))
TRACK_MIN_DURATION = float(os.getenv("EVO_TRACK_MIN_DURATION", "0.15"))
TRACK_MAX_DURATION = float(os.getenv("EVO_TRACK_MAX_DURATION", "0.25"))
TRACK_MIN_EVENTS = int(os.getenv("EVO_TRACK_MIN_EVENTS", "8"))

# ======================== 仿真配置 ========================
SIM_N_LANDMARKS = int(os.getenv("EVO_SIM_N_LANDMARKS", "15"))
SIM_DEPTH_MEAN = float(os.getenv("EVO_SIM_DEPTH_MEAN", "10"))
SIM_DEPTH_HALFWIDTH = float(os.getenv("EVO_SIM_DEPTH_HALFWIDTH", "8"))
SIM_NOISE_SIGMA = float(os.getenv("EVO_SIM_NOISE_SIGMA", "1"))    # px
SIM_WINDOW = float(os.getenv("EVO_SIM_WINDOW", "0.3"))            # seconds
SIM_FOCAL = float(os.getenv("EVO_SIM_FOCAL", "700"))              # px
SIM_IMAGE_WIDTH = int(os.getenv("EVO_SIM_IMAGE_WIDTH", "640"))    # px
SIM_EVENTS_PER_TRACK = int(os.getenv("EVO_SIM_EVENTS_PER_TRACK", "30"))
SIM_TRIALS = int(os.getenv("EVO_SIM_TRIALS", "1000"))
SIM_SEED = int(os.getenv("EVO_SIM_SEED", "0"))
SIM_OMEGA_RANGE = 0.5        # ω_true ~ U[-0.5, 0.5] rad/s
SIM_MAX_REJECTIONS = 1000

# ======================== 服务配置 ========================
SERVER_HOST = os.getenv("EVO_SERVER_HOST", "0.0.0.0")
SERVER_PORT = int(os.getenv("EVO_SERVER_PORT", "5001"))
LOG_LEVEL = os.getenv("EVO_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
