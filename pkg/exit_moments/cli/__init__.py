"""
命令列模組
CLI Module

子命令分派與結果輸出
Subcommand dispatch and result emission
"""

from .command_runner import CommandRunner, RunConfig, main, run

__all__ = ["CommandRunner", "RunConfig", "main", "run"]
