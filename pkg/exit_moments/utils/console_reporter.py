"""
Console Reporter
主控台進度回報器

以表情符號前綴輸出進度訊息到 stderr，stdout 只留給結果文件
"""

import sys
from typing import Optional, TextIO


class ConsoleReporter:
    """主控台進度回報器

    verbosity: 0 靜默，1 一般進度，2 含除錯訊息
    """

    def __init__(self, verbosity: int = 0, stream: Optional[TextIO] = None):
        self.verbosity = verbosity
        self._stream = stream

    @property
    def stream(self) -> TextIO:
        # 每次取用當下的 sys.stderr，方便測試替換
        return self._stream if self._stream is not None else sys.stderr

    def _emit(self, level: int, icon: str, message: str) -> None:
        if self.verbosity >= level:
            print(f"{icon} {message}", file=self.stream)

    def info(self, message: str) -> None:
        self._emit(1, "📝", message)

    def step(self, message: str) -> None:
        self._emit(1, "🔧", message)

    def success(self, message: str) -> None:
        self._emit(1, "✅", message)

    def stats(self, message: str) -> None:
        self._emit(1, "📊", message)

    def saved(self, path) -> None:
        self._emit(1, "💾", f"結果保存: {path}")

    def done(self, message: str) -> None:
        self._emit(1, "🎉", message)

    def warning(self, message: str) -> None:
        self._emit(1, "⚠️", message)

    def debug(self, message: str) -> None:
        self._emit(2, "🐛", message)

    def error(self, message: str) -> None:
        # 錯誤訊息不受 verbosity 影響
        print(f"❌ {message}", file=self.stream)


SILENT = ConsoleReporter(verbosity=0)
