"""
Moment Table
出口時間矩表格
"""

from dataclasses import dataclass
from typing import List, Union

import numpy as np
import pandas as pd

from ..utils.errors import NegativeOrder, OutOfRange
from .model_ball import ModelBall

QUADRATURE = "quadrature"
MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True, eq=False)
class MomentTable:
    """徑向格點上的 u^k(t_i)，k = 0..K"""

    ball: ModelBall
    grid: np.ndarray
    values: np.ndarray
    method: str = QUADRATURE

    @property
    def K(self) -> int:
        return self.values.shape[0] - 1

    def value_at(self, k: int, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """格點之間線性插值"""
        if k < 0:
            raise NegativeOrder(f"矩的階數必須非負: k={k}")
        if k > self.K:
            raise OutOfRange(f"表格只到 K={self.K}，查詢 k={k}")
        points = np.asarray(t, dtype=float)
        if np.any(points < 0.0) or np.any(points > self.ball.r):
            raise OutOfRange(f"查詢點超出 [0, {self.ball.r}]: {t}")
        result = np.interp(points, self.grid, self.values[k])
        return float(result) if points.ndim == 0 else result

    def header_lines(self) -> List[str]:
        return [f"n={self.ball.n}, r={self.ball.r!r}, method={self.method}"]

    def to_frame(self) -> pd.DataFrame:
        columns = {"t": self.grid}
        for k in range(self.K + 1):
            columns[f"u{k}"] = self.values[k]
        return pd.DataFrame(columns)
