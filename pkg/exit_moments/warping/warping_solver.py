"""
Warping Solver
翹曲方程求解器

以固定步長 RK4 積分 h'' = G h，起步使用原點泰勒級數。
常數剖面直接使用閉式解 t 或 sinh(√b t)/√b。
"""

import math
from typing import Callable, Optional

import numpy as np

from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import InvalidInput, InvalidProfile, NonPositiveH
from .curvature_profile import CurvatureProfile
from .warping_function import EUCLIDEAN, HYPERBOLIC, WarpingFunction

MAX_STEPS = 1 << 22


def runge_kutta4(rhs: Callable[[float, np.ndarray], np.ndarray], t: float, step: float,
                 state: np.ndarray) -> np.ndarray:
    """單步四階 Runge-Kutta"""
    k1 = rhs(t, state)
    k2 = rhs(t + step / 2.0, state + step / 2.0 * k1)
    k3 = rhs(t + step / 2.0, state + step / 2.0 * k2)
    k4 = rhs(t + step, state + step * k3)
    return state + step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


class WarpingSolver:
    """翹曲方程求解器"""

    def __init__(self, grid_steps: int = 4096, reporter: Optional[ConsoleReporter] = None):
        """
        初始化求解器

        Args:
            grid_steps: 最少步數
            reporter: 進度回報器
        """
        if grid_steps < 16:
            raise InvalidInput(f"格點步數過少: {grid_steps}")
        self.grid_steps = grid_steps
        self.reporter = reporter or SILENT

    def solve(self, profile: CurvatureProfile, t_max: float, tol: float = 1e-10) -> WarpingFunction:
        """
        求解翹曲函數

        Args:
            profile: 曲率剖面
            t_max: 積分區間右端點
            tol: 容許誤差

        Returns:
            WarpingFunction: 翹曲函數
        """
        if not (t_max > 0.0 and math.isfinite(t_max)):
            raise InvalidInput(f"t_max 必須為正: {t_max}")
        if not tol > 0.0:
            raise InvalidInput(f"容許誤差必須為正: {tol}")

        g_max = profile.validate_on(t_max)
        steps = self._choose_steps(t_max, tol, g_max)
        grid = np.linspace(0.0, t_max, steps + 1)

        b = profile.closed_form_b()
        if b is not None:
            self.reporter.debug(f"常數曲率 b={b}，使用閉式解")
            if b == 0.0:
                return WarpingFunction(profile, grid, grid, np.ones_like(grid), EUCLIDEAN)
            root = math.sqrt(b)
            return WarpingFunction(profile, grid, np.sinh(root * grid) / root,
                                   np.cosh(root * grid), HYPERBOLIC)

        self.reporter.step(f"RK4 積分翹曲方程: t_max={t_max}, steps={steps}")
        h, h_prime = self._integrate(profile, grid)
        self.reporter.success(f"翹曲函數完成: h(t_max)={h[-1]:.6g}")
        return WarpingFunction(profile, grid, h, h_prime)

    def _choose_steps(self, t_max: float, tol: float, g_max: float) -> int:
        # RK4 局部誤差約 (δ √G)^5
        step_for_tol = tol ** 0.2 / (1.0 + math.sqrt(g_max))
        steps = max(self.grid_steps, math.ceil(t_max / step_for_tol))
        if steps > MAX_STEPS:
            self.reporter.warning(f"所需步數 {steps} 超過上限，改用 {MAX_STEPS}")
            steps = MAX_STEPS
        return steps

    @staticmethod
    def _integrate(profile: CurvatureProfile, grid: np.ndarray):
        step = grid[1] - grid[0]
        g0, g1, g2 = profile.series_coefficients()
        a3, a4, a5 = g0 / 6.0, g1 / 12.0, (g2 + g0 * g0 / 6.0) / 20.0

        def rhs(t: float, state: np.ndarray) -> np.ndarray:
            curvature = profile.evaluate(t)
            if curvature < 0.0:
                raise InvalidProfile(f"曲率剖面在 t={t:.6g} 為負: G={curvature:.6g}")
            return np.array([state[1], curvature * state[0]])

        h = np.empty_like(grid)
        h_prime = np.empty_like(grid)
        h[0], h_prime[0] = 0.0, 1.0

        t1 = grid[1]
        state = np.array([
            t1 + a3 * t1 ** 3 + a4 * t1 ** 4 + a5 * t1 ** 5,
            1.0 + 3.0 * a3 * t1 ** 2 + 4.0 * a4 * t1 ** 3 + 5.0 * a5 * t1 ** 4,
        ])
        h[1], h_prime[1] = state

        for i in range(1, len(grid) - 1):
            state = runge_kutta4(rhs, grid[i], step, state)
            if not state[0] > 0.0:
                raise NonPositiveH(f"翹曲函數在 t={grid[i + 1]:.6g} 非正: h={state[0]:.6g}")
            h[i + 1], h_prime[i + 1] = state
        return h, h_prime


def solve_warping(profile: CurvatureProfile, t_max: float, tol: float = 1e-10,
                  grid_steps: int = 4096) -> WarpingFunction:
    """便利函數：以預設設定求解翹曲函數"""
    return WarpingSolver(grid_steps=grid_steps).solve(profile, t_max, tol)
