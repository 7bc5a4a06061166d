"""
Cap Shooting
球冠特徵值打靶法

φ'' + (m−2) cot(t) φ' + λ φ = 0,  φ(0) = 1, φ'(0) = 0
從原點級數 φ ≈ 1 − λt²/(2(m−1)) 起步，以 DOP853 積分到 t = r，
找出使 φ(r) = 0 的最小 λ。
"""

import math
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import bisect

from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import BracketFailure, InvalidInput
from .cap_spec import SHOOTING, CapSpec, EigenEstimate


class CapShooting:
    """球冠特徵值打靶法"""

    def __init__(self, growth: float = 1.25, max_widenings: int = 8,
                 rtol: float = 1e-12, atol: float = 1e-14,
                 reporter: Optional[ConsoleReporter] = None):
        """
        Args:
            growth: 掃描 λ 時的倍率
            max_widenings: 掃描上限的最多擴張次數
            rtol: 積分相對容差
            atol: 積分絕對容差
            reporter: 進度回報器
        """
        if not growth > 1.0:
            raise InvalidInput(f"掃描倍率必須大於 1: {growth}")
        self.growth = growth
        self.max_widenings = max_widenings
        self.rtol = rtol
        self.atol = atol
        self.reporter = reporter or SILENT

    def boundary_value(self, cap: CapSpec, lam: float) -> float:
        """φ(r; λ)"""
        start = min(1e-4, cap.r * 1e-3)
        curvature_term = cap.m - 2

        def rhs(t, state):
            phi, dphi = state
            return [dphi, -curvature_term * dphi / math.tan(t) - lam * phi]

        initial = [1.0 - lam * start ** 2 / (2.0 * (cap.m - 1)), -lam * start / (cap.m - 1)]
        solution = solve_ivp(rhs, (start, cap.r), initial, method="DOP853",
                             rtol=self.rtol, atol=self.atol)
        if not solution.success:
            raise BracketFailure(f"積分失敗: λ={lam}, {solution.message}")
        return float(solution.y[0, -1])

    def eigenvalue(self, cap: CapSpec, tol: float = 1e-9) -> EigenEstimate:
        """
        第一 Dirichlet 特徵值

        Args:
            cap: 球冠
            tol: λ 的容差

        Returns:
            EigenEstimate: kind = shooting
        """
        if not tol > 0.0:
            raise InvalidInput(f"容差必須為正: {tol}")
        self.reporter.step(f"打靶法: m={cap.m}, r={cap.r:.12g}")

        scale = (math.pi / (2.0 * cap.r)) ** 2
        low = 0.5 * scale
        while self.boundary_value(cap, low) <= 0.0:
            low *= 0.5
            if low < 1e-12 * scale:
                raise BracketFailure(f"λ 下界無法使 φ(r) > 0: m={cap.m}, r={cap.r}")

        ceiling = 4.0 * cap.m * scale
        high = low
        for _ in range(self.max_widenings + 1):
            while high < ceiling:
                candidate = high * self.growth
                value = self.boundary_value(cap, candidate)
                if value == 0.0:
                    return EigenEstimate(candidate, SHOOTING, tol)
                if value < 0.0:
                    root = bisect(lambda lam: self.boundary_value(cap, lam), high, candidate,
                                  xtol=tol, rtol=4.0 * np.finfo(float).eps, maxiter=200)
                    self.reporter.success(f"λ₁ = {root:.12g}")
                    return EigenEstimate(float(root), SHOOTING, tol)
                high = candidate
            ceiling *= 2.0
            self.reporter.debug(f"擴大掃描上限至 {ceiling:.6g}")

        raise BracketFailure(f"無法夾出特徵值: m={cap.m}, r={cap.r}, 上限 {ceiling:.6g}")


def cap_eigenvalue_shooting(cap: CapSpec, tol: float = 1e-9) -> EigenEstimate:
    return CapShooting().eigenvalue(cap, tol)
