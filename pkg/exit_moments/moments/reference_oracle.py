"""
Reference Oracle
細格點參考積分

以一般梯形法（不拆出 s^p 權重）在細格點上計算 u^k，
作為主路徑乘積梯形法的獨立對照。
"""

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..utils.errors import NegativeOrder, OutOfRange
from .model_ball import ModelBall


def reference_exit_moment(ball: ModelBall, k: int, t: float = 0.0, grid_size: int = 1 << 16) -> float:
    if k < 0:
        raise NegativeOrder(f"矩的階數必須非負: k={k}")
    if not 0.0 <= t <= ball.r:
        raise OutOfRange(f"查詢點超出 [0, {ball.r}]: {t}")

    grid = np.linspace(0.0, ball.r, grid_size + 1)
    weight = np.asarray(ball.warping.eval_h(grid)) ** (ball.n - 1)
    cutoff = 10.0 * grid[1]

    moment = np.ones_like(grid)
    for order in range(1, k + 1):
        inner = cumulative_trapezoid(weight * order * moment, grid, initial=0.0)
        rho = np.zeros_like(grid)
        far = grid >= cutoff
        rho[far] = inner[far] / weight[far]
        rho[~far] = order * moment[0] * grid[~far] / ball.n
        outer = cumulative_trapezoid(rho, grid, initial=0.0)
        moment = outer[-1] - outer
    return float(np.interp(t, grid, moment))
