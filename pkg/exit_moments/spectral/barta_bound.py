"""
Barta Lower Bound
Barta 特徵值下界

對試驗函數 u > 0（u(r) = 0）
    λ₁(B_r) ≥ inf_t u(t) / D(t),
    D(t) = ∫_t^r sin^{2−m}(τ) ∫_0^τ sin^{m−2}(s) u(s) ds dτ.
D 以乘積梯形法在 N 與 2N 格點上計算後做 Richardson 外推；
t = r 處取極限 |u'(r)| / ρ(r)。
"""

from typing import Callable, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

from ..moments.radial_quadrature import RadialQuadrature
from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import InvalidInput
from .cap_spec import LOWER_BOUND, CapSpec, CosineTrial, EigenEstimate

CAP_SERIES_CUTOFF = 1e-3


class BartaBound:
    """Barta 特徵值下界"""

    def __init__(self, grid_size: int = 4096, refine_tol: float = 1e-10,
                 trial_factory: Callable[[float], CosineTrial] = CosineTrial,
                 reporter: Optional[ConsoleReporter] = None):
        """
        Args:
            grid_size: 格點區間數（≥ 64）
            refine_tol: 黃金分割細化容差
            trial_factory: 由球冠半徑建立試驗函數
            reporter: 進度回報器
        """
        if grid_size < 64:
            raise InvalidInput(f"Barta 格點數至少 64: {grid_size}")
        if not refine_tol > 0.0:
            raise InvalidInput(f"細化容差必須為正: {refine_tol}")
        self.grid_size = grid_size
        self.refine_tol = refine_tol
        self.trial_factory = trial_factory
        self.reporter = reporter or SILENT

    def _tail_and_edge(self, cap: CapSpec, trial, grid_size: int) -> Tuple[np.ndarray, np.ndarray, float]:
        grid = np.linspace(0.0, cap.r, grid_size + 1)
        quadrature = RadialQuadrature(grid, np.sin(grid), min(CAP_SERIES_CUTOFF, cap.r / 64.0))
        rho = quadrature.ratio(cap.m - 2, trial.value(grid))
        return grid, quadrature.tail_integral(cap.m - 2, None, rho=rho), float(rho[-1])

    def _quotient(self, cap: CapSpec, trial) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        grid, coarse, edge_coarse = self._tail_and_edge(cap, trial, self.grid_size)
        _, fine, edge_fine = self._tail_and_edge(cap, trial, 2 * self.grid_size)
        tail = (4.0 * fine[::2] - coarse) / 3.0
        edge = (4.0 * edge_fine - edge_coarse) / 3.0

        quotient = np.empty_like(grid)
        quotient[:-1] = trial.value(grid[:-1]) / tail[:-1]
        quotient[-1] = -float(trial.derivative(cap.r)) / edge
        return grid, tail, quotient

    def profile(self, cap: CapSpec) -> Tuple[np.ndarray, np.ndarray]:
        """
        Barta 商 q(t) = u(t)/D(t) 的格點值

        Args:
            cap: 球冠

        Returns:
            Tuple: (t, q)
        """
        grid, _, quotient = self._quotient(cap, self.trial_factory(cap.r))
        return grid, quotient

    def lower_bound(self, cap: CapSpec) -> EigenEstimate:
        """
        λ₁(B_r) 的 Barta 下界

        Args:
            cap: 球冠

        Returns:
            EigenEstimate: kind = lower_bound
        """
        self.reporter.step(f"Barta 下界: m={cap.m}, r={cap.r:.12g}")
        trial = self.trial_factory(cap.r)
        grid, tail, quotient = self._quotient(cap, trial)
        index = int(np.argmin(quotient))
        best_t, best_q = float(grid[index]), float(quotient[index])

        if 0 < index < len(grid) - 1:
            spline = CubicSpline(grid, tail)

            def barta_quotient(t: float) -> float:
                return float(trial.value(t) / spline(t))

            try:
                result = minimize_scalar(barta_quotient, method="golden", tol=self.refine_tol,
                                         bracket=(grid[index - 1], grid[index], grid[index + 1]))
                if result.success and result.fun < best_q and grid[index - 1] <= result.x <= grid[index + 1]:
                    best_t, best_q = float(result.x), float(result.fun)
            except (ValueError, RuntimeError):
                # 商數在此處平坦，格點最小值即為答案
                self.reporter.debug("黃金分割無法夾住最小值，沿用格點最小值")

        self.reporter.success(f"Barta 下界 = {best_q:.12g} (t = {best_t:.6g})")
        return EigenEstimate(best_q, LOWER_BOUND, self.refine_tol, best_t)


def barta_lower_bound(cap: CapSpec, grid_size: int = 4096, refine_tol: float = 1e-10) -> EigenEstimate:
    return BartaBound(grid_size, refine_tol).lower_bound(cap)
