"""
Result Writer
結果輸出管理器

管理 JSON 報告與 CSV 表格的輸出和載入。
輸出不含時間戳，相同輸入得到逐位元相同的檔案。
"""

import io
import json
import sys
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np
import pandas as pd

from .console_reporter import ConsoleReporter, SILENT
from .errors import InvalidInput


def to_builtin(value: Any) -> Any:
    """將 numpy 純量、陣列與 tuple 轉成 JSON 可序列化的內建型別"""
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    return value


class ResultWriter:
    """結果輸出管理器"""

    def __init__(self, float_digits: int = 12, reporter: Optional[ConsoleReporter] = None):
        """
        初始化輸出管理器

        Args:
            float_digits: CSV 浮點數的有效位數
            reporter: 進度回報器
        """
        if float_digits < 1:
            raise InvalidInput(f"無效的有效位數: {float_digits}")
        self.float_digits = float_digits
        self.reporter = reporter or SILENT

    @property
    def float_format(self) -> str:
        return f"%.{self.float_digits}g"

    def json_text(self, data: Any) -> str:
        """序列化為 JSON 文字（完整精度，可逐位元還原）"""
        return json.dumps(to_builtin(data), ensure_ascii=False, indent=2) + "\n"

    def csv_text(self, frame: pd.DataFrame, header_lines: Iterable[str] = ()) -> str:
        """
        序列化為 CSV 文字

        Args:
            frame: 表格資料
            header_lines: 以 "# " 開頭的中繼資料行

        Returns:
            str: CSV 文字
        """
        buffer = io.StringIO()
        for line in header_lines:
            buffer.write(f"# {line}\n")
        frame.to_csv(buffer, index=False, float_format=self.float_format, lineterminator="\n")
        return buffer.getvalue()

    def emit(self, text: str, output: Optional[str] = None) -> Optional[Path]:
        """
        輸出文字到檔案或 stdout

        Args:
            text: 文件內容
            output: 輸出路徑，None 表示 stdout

        Returns:
            Optional[Path]: 儲存檔案路徑
        """
        if output is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return None

        filepath = Path(output)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        self.reporter.saved(filepath)
        return filepath

    def save_json(self, data: Any, output: Optional[str] = None) -> Optional[Path]:
        return self.emit(self.json_text(data), output)

    def save_table(self, frame: pd.DataFrame, output: Optional[str] = None,
                   header_lines: Iterable[str] = ()) -> Optional[Path]:
        return self.emit(self.csv_text(frame, header_lines), output)

    @staticmethod
    def load_json(path: str) -> Any:
        """
        載入 JSON 文件

        Args:
            path: 檔案路徑

        Returns:
            Any: 解析後的資料
        """
        filepath = Path(path)
        if not filepath.exists():
            raise InvalidInput(f"找不到輸入檔案: {filepath}")
        try:
            with open(filepath, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidInput(f"無法解析 JSON 檔案 {filepath}: {e}") from e
