"""
Config Loader
配置載入器

內建預設值 ← YAML 檔案 ← 命令列參數，依序合併
"""

import copy
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import InvalidInput

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "warping": {"grid_steps": 4096, "tol": 1e-10},
    "moments": {"grid_size": 4096, "richardson": False},
    "spectral": {"barta_grid": 4096, "refine_tol": 1e-10, "shooting_tol": 1e-9},
    "warped_cone": {"horizon": 1000.0, "grid_size": 200001},
    "simulation": {
        "paths": 100000,
        "dt": 1e-4,
        "seed": 20240101,
        "block_size": 8192,
        "workers": 1,
        "max_k": 2,
    },
    "output": {"float_digits": 12},
}


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigLoader:
    """配置載入器"""

    def __init__(self, path: Optional[str] = None):
        """
        初始化配置

        Args:
            path: YAML 配置檔路徑（可選）
        """
        self.path = Path(path) if path else None
        self.config = deep_merge(DEFAULT_CONFIG, self._read_yaml(self.path) if self.path else {})

    @staticmethod
    def _read_yaml(path: Path) -> Dict[str, Any]:
        if not path.exists():
            raise InvalidInput(f"找不到配置檔案: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise InvalidInput(f"無法解析配置檔案 {path}: {e}") from e

        if not isinstance(data, dict):
            raise InvalidInput(f"配置檔案頂層必須是映射: {path}")
        unknown = set(data) - set(DEFAULT_CONFIG)
        if unknown:
            raise InvalidInput(f"未知的配置區段: {sorted(unknown)}")
        return data

    def get(self, section: str, key: str) -> Any:
        try:
            return self.config[section][key]
        except KeyError as e:
            raise InvalidInput(f"未知的配置項: {section}.{key}") from e

    def override(self, section: str, key: str, value: Any) -> None:
        """以命令列參數覆寫配置（None 表示未指定）"""
        if value is not None:
            self.config.setdefault(section, {})[key] = value
