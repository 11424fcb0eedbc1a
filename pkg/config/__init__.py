# -*- coding: utf-8 -*-
"""
配置模块

提供全局默认参数（constants）与 TOML 配置加载（loader）。
"""

from . import constants
from .loader import ConfigError, load_toml, normalize_name, require_keys

__all__ = [
    "constants",
    "ConfigError",
    "load_toml",
    "normalize_name",
    "require_keys",
]
