"""
工具模組
Utilities Module

提供錯誤類型、進度回報、配置載入與結果輸出工具
Provides error types, progress reporting, configuration and result persistence
"""

from .config_loader import ConfigLoader, DEFAULT_CONFIG
from .console_reporter import ConsoleReporter, SILENT
from .result_writer import ResultWriter
from .value_parser import parse_angle, parse_float_list, parse_scalar

__all__ = [
    "ConfigLoader",
    "DEFAULT_CONFIG",
    "ConsoleReporter",
    "SILENT",
    "ResultWriter",
    "parse_angle",
    "parse_float_list",
    "parse_scalar",
]
