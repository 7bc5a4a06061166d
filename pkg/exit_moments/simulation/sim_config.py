"""
Simulation Config
模擬設定與結果
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..moments.model_ball import ModelBall
from ..utils.errors import InvalidInput, NegativeOrder, OutOfRange

SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class SimConfig:
    """徑向布朗運動模擬設定"""

    ball: ModelBall
    start_t: float = 0.0
    paths: int = 100000
    dt: float = 1e-4
    seed: int = 20240101
    max_k: int = 2
    t_floor: Optional[float] = None
    block_size: int = 8192
    workers: int = 1
    enforce_step_guard: bool = True
    bridge_correction: bool = True

    def __post_init__(self):
        if not 0.0 <= self.start_t < self.ball.r:
            raise OutOfRange(f"起點必須在 [0, {self.ball.r}) 內: {self.start_t}")
        if not self.dt > 0.0:
            raise InvalidInput(f"時間步長必須為正: dt={self.dt}")
        if self.paths < 1 or self.block_size < 1 or self.workers < 1:
            raise InvalidInput(f"paths、block_size、workers 必須為正: {self.paths}, {self.block_size}, {self.workers}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise InvalidInput(f"種子必須是 64 位元無號整數: {self.seed}")
        if self.max_k < 1:
            raise NegativeOrder(f"max_k 必須 ≥ 1: {self.max_k}")
        if self.t_floor is not None and not 0.0 < self.t_floor < self.ball.r:
            raise InvalidInput(f"t_floor 必須在 (0, r) 內: {self.t_floor}")

    @property
    def floor(self) -> float:
        """原點反射半徑，預設為翹曲格點步長的 10 倍"""
        if self.t_floor is not None:
            return self.t_floor
        return min(10.0 * self.ball.warping.step, 0.01 * self.ball.r)


@dataclass(frozen=True)
class SimResult:
    """模擬結果"""

    moment_estimates: List[Tuple[int, float, float]]
    paths_used: int
    dt_effective: float
    seed_echo: int
    elapsed: float = field(default=0.0, compare=False)

    def estimate(self, k: int) -> Tuple[float, float]:
        """(mean, standard_error)"""
        for order, mean, se in self.moment_estimates:
            if order == k:
                return mean, se
        raise NegativeOrder(f"結果中沒有 k={k} 的估計")

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            "moment_estimates": [{"k": k, "mean": mean, "standard_error": se}
                                 for k, mean, se in self.moment_estimates],
            "paths_used": self.paths_used,
            "dt_effective": self.dt_effective,
            "seed": self.seed_echo,
        }
        if include_timing:
            data["elapsed"] = self.elapsed
        return data
