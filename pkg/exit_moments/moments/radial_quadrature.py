"""
Radial Quadrature
徑向巢狀積分器

對權重 h^p 計算
    ρ(τ) = h^{-p}(τ) ∫_0^τ h^p(s) f(s) ds,     U(t) = ∫_t^R ρ(τ) dτ.

內層積分把 h^p(s) 寫成 s^p · (h(s)/s)^p，對 s^p 做精確積分，
其餘部分在每個區間線性插值（乘積梯形法），因此任何 p > −1 都可用。
τ 小於 t_series 時 ρ 以漸近式 f(0) τ / (p + 1) 取代。
"""

from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..utils.errors import InvalidInput, QuadratureUnderflow
from ..warping.warping_function import WarpingFunction


class RadialQuadrature:
    """徑向巢狀積分器"""

    def __init__(self, grid: np.ndarray, h_values: np.ndarray, t_series: float):
        """
        Args:
            grid: 由 0 開始的等距格點
            h_values: 格點上的 h（h(0) = 0，h'(0) = 1）
            t_series: 改用漸近式的門檻
        """
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1 or len(grid) < 3 or grid[0] != 0.0:
            raise InvalidInput("格點必須是由 0 開始、至少 3 點的一維陣列")
        self.grid = grid
        self.h = np.asarray(h_values, dtype=float)
        self.t_series = float(t_series)
        self.radius = float(grid[-1])

        shape = np.ones_like(grid)
        shape[1:] = self.h[1:] / grid[1:]
        self.shape = shape

    @classmethod
    def for_warping(cls, warping: WarpingFunction, radius: float, grid_size: int) -> "RadialQuadrature":
        if grid_size < 16:
            raise InvalidInput(f"格點數過少: {grid_size}")
        grid = np.linspace(0.0, radius, grid_size + 1)
        return cls(grid, warping.eval_h(grid), warping.t_series)

    def inner_integral(self, exponent: float, values: np.ndarray) -> np.ndarray:
        """累積積分 ∫_0^{t_i} h^p(s) f(s) ds"""
        if not exponent > -1.0:
            raise InvalidInput(f"權重指數必須大於 -1: p={exponent}")
        a, b = self.grid[:-1], self.grid[1:]
        p1, p2 = exponent + 1.0, exponent + 2.0
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            weighted = np.asarray(values, dtype=float) * self.shape ** exponent
            m0 = (b ** p1 - a ** p1) / p1
            m1 = (b ** p2 - a ** p2) / p2
            slope = (weighted[1:] - weighted[:-1]) / (b - a)
            pieces = weighted[:-1] * m0 + slope * (m1 - a * m0)
        return np.concatenate(([0.0], np.cumsum(pieces)))

    def ratio(self, exponent: float, values: np.ndarray) -> np.ndarray:
        """ρ(τ)，τ = 0 處為 0"""
        values = np.asarray(values, dtype=float)
        inner = self.inner_integral(exponent, values)
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            denominator = self.h ** exponent
            rho = inner / denominator

        near = self.grid < self.t_series
        rho[near] = values[0] * self.grid[near] / (exponent + 1.0)
        if not np.all(np.isfinite(rho[~near])):
            bad = self.grid[~near][~np.isfinite(rho[~near])][0]
            raise QuadratureUnderflow(f"h^{exponent:g} 在 τ={bad:.6g} 溢位或下溢，無法計算比值")
        return rho

    def tail_integral(self, exponent: float, values: np.ndarray,
                      rho: Optional[np.ndarray] = None) -> np.ndarray:
        """U(t_i) = ∫_{t_i}^R ρ(τ) dτ，U(R) = 0"""
        if rho is None:
            rho = self.ratio(exponent, values)
        cumulative = cumulative_trapezoid(rho, self.grid, initial=0.0)
        tail = cumulative[-1] - cumulative
        tail[-1] = 0.0
        return tail
