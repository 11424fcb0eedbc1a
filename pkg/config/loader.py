# -*- coding: utf-8 -*-
"""
配置加载器 - 读取 TOML 配置文件并规范化名称参数
"""

from __future__ import annotations

import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, Iterable

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """配置文件缺失或格式错误"""
    pass


def load_toml(path: str | Path) -> Dict[str, Any]:
    """
    读取 TOML 文件

    Args:
        path: 文件路径

    Returns:
        解析后的字典

    Raises:
        ConfigError: 文件不存在或不是合法 TOML
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"配置文件不存在: {path}")
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"TOML 解析失败: {path}: {e}") from e
    logger.debug(f"📥 读取配置: {path} keys={sorted(data)}")
    return data


def normalize_name(value: str | None, supported: Iterable[str], default: str | None = None) -> str:
    """
    规范化名称参数（去空白、转小写）

    Args:
        value: 原始名称或 None
        supported: 支持的名称集合
        default: value 为空时的默认值

    Returns:
        规范化后的名称

    Raises:
        ConfigError: 名称不在支持列表中
    """
    supported = list(supported)
    if not value:
        if default is None:
            raise ConfigError(f"缺少名称参数，支持: {supported}")
        return default

    name = value.strip().lower()
    if name not in supported:
        raise ConfigError(f"不支持的名称: {value!r}，支持: {supported}")
    return name


def require_keys(data: Dict[str, Any], keys: Iterable[str], source: str = "") -> None:
    """检查必需字段"""
    missing = [k for k in keys if k not in data]
    if missing:
        raise ConfigError(f"配置缺少字段 {missing} {source}".rstrip())
