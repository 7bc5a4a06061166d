#!/usr/bin/env python3
"""
出口時間矩 - 命令列執行檔案
Exit Moments - Command Runner

用法:
    python run/exit_moments.py moments --profile constant:0 --n 2 --r 1 --K 2 --at 0
    python run/exit_moments.py barta --m 3 --r atan:sqrt2
    python run/exit_moments.py verify --quick
"""

import sys
from pathlib import Path

# 添加專案路徑
sys.path.append(str(Path(__file__).parent.parent))

from exit_moments.cli import run


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
