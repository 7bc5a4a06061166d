"""
Radial Simulator
徑向布朗運動模擬器

以 Euler–Maruyama 積分 dR = √2 dW + (n−1)(h'/h)(R) dt（生成元為 Δ），
在 t_floor 反射，越過邊界時在最後一步內線性插值出口時間；
兩端都在球內的步以布朗橋機率判定是否在步內碰到邊界。
路徑分成固定大小的區塊，每個區塊有自己的 Philox 串流（SeedSequence 以區塊編號衍生），
因此結果與執行緒數無關。
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..moments.moment_table import MONTE_CARLO, MomentTable
from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import InvalidInput, StepTooLarge
from .sim_config import SimConfig, SimResult


class RadialSimulator:
    """徑向布朗運動模擬器"""

    def __init__(self, reporter: Optional[ConsoleReporter] = None):
        self.reporter = reporter or SILENT

    @staticmethod
    def _drift(config: SimConfig, radius: np.ndarray) -> np.ndarray:
        n = config.ball.n
        floor = config.floor
        log_derivative = np.asarray(config.ball.warping.log_derivative(np.maximum(radius, floor)))
        return np.minimum((n - 1) * log_derivative, (n - 1) / floor)

    def _run_block(self, config: SimConfig, seed: np.random.SeedSequence, count: int) -> np.ndarray:
        rng = np.random.Generator(np.random.Philox(seed))
        r, dt, floor = config.ball.r, config.dt, config.floor
        noise_scale = math.sqrt(2.0 * dt)

        alive = np.arange(count)
        radius = np.full(count, max(config.start_t, floor))
        exit_times = np.empty(count)
        step = 0
        while alive.size:
            proposal = radius + self._drift(config, radius) * dt + noise_scale * rng.standard_normal(alive.size)
            proposal = np.where(proposal < floor, 2.0 * floor - proposal, proposal)

            exited = proposal >= r
            fraction = np.empty(alive.size)
            if exited.any():
                fraction[exited] = (r - radius[exited]) / (proposal[exited] - radius[exited])
            if config.bridge_correction:
                # 兩端都在球內時，橋過程在步內碰到邊界的機率 exp(−(r−x)(r−x')/dt)
                crossing = np.exp(-(r - radius) * np.maximum(r - proposal, 0.0) / dt)
                bridged = ~exited & (rng.random(alive.size) < crossing)
                fraction[bridged] = 0.5
                exited |= bridged
            if exited.any():
                exit_times[alive[exited]] = (step + fraction[exited]) * dt
                stay = ~exited
                alive, radius = alive[stay], proposal[stay]
            else:
                radius = proposal
            step += 1
        return exit_times

    def exit_times(self, config: SimConfig) -> np.ndarray:
        """
        所有路徑的出口時間，依區塊順序排列

        Args:
            config: 模擬設定

        Returns:
            np.ndarray: 出口時間
        """
        if config.enforce_step_guard and config.dt > (config.ball.r / 50.0) ** 2:
            raise StepTooLarge(f"dt={config.dt} 大於 (r/50)² = {(config.ball.r / 50.0) ** 2:.3g}")

        blocks = math.ceil(config.paths / config.block_size)
        counts = [min(config.block_size, config.paths - i * config.block_size) for i in range(blocks)]
        seeds = np.random.SeedSequence(config.seed).spawn(blocks)
        self.reporter.step(f"模擬 {config.paths} 條路徑: {blocks} 個區塊, {config.workers} 個執行緒, dt={config.dt}")

        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(lambda job: self._run_block(config, *job), zip(seeds, counts)))
        return np.concatenate(results)

    @staticmethod
    def moment_estimates(times: np.ndarray, max_k: int) -> List[Tuple[int, float, float]]:
        """樣本矩 E[τ^k] 與標準誤"""
        estimates = [(0, 1.0, 0.0)]
        for k in range(1, max_k + 1):
            powers = times ** k
            se = float(np.std(powers, ddof=1) / math.sqrt(len(powers))) if len(powers) > 1 else 0.0
            estimates.append((k, float(np.mean(powers)), se))
        return estimates

    def simulate_exit(self, config: SimConfig, exit_times_path: Optional[str] = None) -> SimResult:
        """
        估計出口時間矩

        Args:
            config: 模擬設定
            exit_times_path: 出口時間二進位輸出路徑（little-endian float64，可選）

        Returns:
            SimResult: 模擬結果
        """
        started = time.perf_counter()
        times = self.exit_times(config)
        if exit_times_path is not None:
            self.write_exit_times(times, exit_times_path)

        result = SimResult(self.moment_estimates(times, config.max_k), len(times), config.dt,
                           config.seed, time.perf_counter() - started)
        mean, se = result.estimate(1)
        self.reporter.success(f"E[τ] = {mean:.6g} ± {se:.2g}")
        return result

    def moment_table(self, config: SimConfig, starts: Sequence[float]) -> MomentTable:
        """
        在多個起點模擬，組成 method=monte_carlo 的矩表格

        Args:
            config: 模擬設定（start_t 會被覆寫）
            starts: [0, r) 內嚴格遞增的起點

        Returns:
            MomentTable: 格點為起點加上邊界 r，邊界上 u^k = 0（k ≥ 1）
        """
        starts = [float(t) for t in starts]
        if not starts or any(b <= a for a, b in zip(starts, starts[1:])):
            raise InvalidInput(f"起點必須非空且嚴格遞增: {starts}")

        values = np.zeros((config.max_k + 1, len(starts) + 1))
        values[0] = 1.0
        for i, start in enumerate(starts):
            result = self.simulate_exit(replace(config, start_t=start))
            for k, mean, _ in result.moment_estimates:
                values[k, i] = mean
        values.flags.writeable = False
        return MomentTable(config.ball, np.array(starts + [config.ball.r]), values, MONTE_CARLO)

    def write_exit_times(self, times: np.ndarray, path: str) -> Path:
        filepath = Path(path)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        times.astype("<f8").tofile(filepath)
        self.reporter.saved(filepath)
        return filepath

    def convergence_sweep(self, config: SimConfig, dt_list: Sequence[float]) -> pd.DataFrame:
        """
        以相同種子在多個步長下模擬，輸出 (dt, mean, se)

        Args:
            config: 模擬設定（dt 會被覆寫）
            dt_list: 遞減的步長列表

        Returns:
            pd.DataFrame: 收斂表
        """
        dt_list = [float(dt) for dt in dt_list]
        if not dt_list or any(b >= a for a, b in zip(dt_list, dt_list[1:])):
            raise InvalidInput(f"步長列表必須非空且嚴格遞減: {dt_list}")

        rows = []
        for dt in dt_list:
            result = self.simulate_exit(replace(config, dt=dt, enforce_step_guard=False))
            mean, se = result.estimate(1)
            rows.append({"dt": dt, "mean": mean, "se": se})
        return pd.DataFrame(rows, columns=["dt", "mean", "se"])
