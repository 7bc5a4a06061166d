"""
Warping Function
翹曲函數

h'' = G h, h(0) = 0, h'(0) = 1 的解。格點上保存 h 與 h'，
格點之間以三次 Hermite 樣條插值（h' 的導數直接取 G h）。
"""

from typing import Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.interpolate import CubicHermiteSpline

from ..utils.errors import OutOfRange, SingularAtZero
from .curvature_profile import CurvatureProfile

ArrayLike = Union[float, np.ndarray]

EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"


def _as_output(values: np.ndarray, scalar: bool) -> ArrayLike:
    return float(values) if scalar else values


class WarpingFunction:
    """翹曲函數 h 及其導數"""

    def __init__(self, profile: CurvatureProfile, grid: np.ndarray, h_values: np.ndarray,
                 h_prime_values: np.ndarray, closed_form_tag: Optional[str] = None):
        """
        Args:
            profile: 曲率剖面
            grid: 等距格點，grid[0] = 0
            h_values: 格點上的 h
            h_prime_values: 格點上的 h'
            closed_form_tag: "euclidean" / "hyperbolic" / None
        """
        self.profile = profile
        self.closed_form_tag = closed_form_tag
        self._grid = np.array(grid, dtype=float)
        self._h = np.array(h_values, dtype=float)
        self._h_prime = np.array(h_prime_values, dtype=float)
        for array in (self._grid, self._h, self._h_prime):
            array.flags.writeable = False

        self.t_max = float(self._grid[-1])
        self.step = float(self._grid[1] - self._grid[0])
        self.t_series = max(10.0 * self.step, 1e-3)
        self._sqrt_b = float(np.sqrt(profile.b)) if closed_form_tag == HYPERBOLIC else 0.0

        curvature = np.asarray(profile.evaluate(self._grid))
        self._h_spline = CubicHermiteSpline(self._grid, self._h, self._h_prime)
        self._h_prime_spline = CubicHermiteSpline(self._grid, self._h_prime, curvature * self._h)

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def h_values(self) -> np.ndarray:
        return self._h

    @property
    def h_prime_values(self) -> np.ndarray:
        return self._h_prime

    def _checked(self, t: ArrayLike) -> Tuple[np.ndarray, bool]:
        values = np.asarray(t, dtype=float)
        slack = 1e-12 * max(self.t_max, 1.0)
        if np.any(values < -slack) or np.any(values > self.t_max + slack) or np.any(np.isnan(values)):
            raise OutOfRange(f"查詢點超出 [0, {self.t_max}]: {t}")
        return np.clip(values, 0.0, self.t_max), values.ndim == 0

    def eval_h(self, t: ArrayLike) -> ArrayLike:
        """h(t)"""
        values, scalar = self._checked(t)
        if self.closed_form_tag == EUCLIDEAN:
            result = values.copy()
        elif self.closed_form_tag == HYPERBOLIC:
            result = np.sinh(self._sqrt_b * values) / self._sqrt_b
        else:
            result = np.where(values == 0.0, 0.0, self._h_spline(values))
        return _as_output(result, scalar)

    def eval_h_prime(self, t: ArrayLike) -> ArrayLike:
        """h'(t)"""
        values, scalar = self._checked(t)
        if self.closed_form_tag == EUCLIDEAN:
            result = np.ones_like(values)
        elif self.closed_form_tag == HYPERBOLIC:
            result = np.cosh(self._sqrt_b * values)
        else:
            result = self._h_prime_spline(values)
        return _as_output(result, scalar)

    def series_log_derivative(self, t: ArrayLike) -> ArrayLike:
        """
        原點附近 h'/h 的級數展開

        h = t + a3 t³ + a4 t⁴ + a5 t⁵ 時，
        h'/h = 1/t + g0 t/3 + g1 t²/4 + ((g2 + g0²/6)/5 − g0²/18) t³ + O(t⁴)
        """
        values = np.asarray(t, dtype=float)
        g0, g1, g2 = self.profile.series_coefficients()
        c3 = (g2 + g0 * g0 / 6.0) / 5.0 - g0 * g0 / 18.0
        with np.errstate(divide="ignore"):
            result = 1.0 / values + g0 * values / 3.0 + g1 * values ** 2 / 4.0 + c3 * values ** 3
        return _as_output(result, values.ndim == 0)

    def log_derivative(self, t: ArrayLike) -> ArrayLike:
        """
        h'(t)/h(t)，t 小於 t_series 時使用級數展開

        Args:
            t: 查詢點 (0, t_max]

        Returns:
            h'/h
        """
        values, scalar = self._checked(t)
        if np.any(values == 0.0):
            raise SingularAtZero("h'/h 在 t = 0 處奇異")

        near = values < self.t_series
        far_points = np.where(near, self.t_series, values)
        if self.closed_form_tag == EUCLIDEAN:
            direct = 1.0 / far_points
        elif self.closed_form_tag == HYPERBOLIC:
            direct = self._sqrt_b / np.tanh(self._sqrt_b * far_points)
        else:
            direct = self._h_prime_spline(far_points) / self._h_spline(far_points)

        if np.any(near):
            series = np.asarray(self.series_log_derivative(np.where(near, values, 1.0)))
            result = np.where(near, series, direct)
        else:
            result = direct
        return _as_output(np.asarray(result, dtype=float), scalar)

    def ode_residual(self) -> float:
        """格點內部 |h'' − G h| 的最大值（二階中央差分）"""
        h = self._h
        second = (h[2:] - 2.0 * h[1:-1] + h[:-2]) / self.step ** 2
        curvature = np.asarray(self.profile.evaluate(self._grid[1:-1]))
        return float(np.max(np.abs(second - curvature * h[1:-1])))

    def to_frame(self) -> pd.DataFrame:
        """格點表格 (t, h, h')"""
        return pd.DataFrame({"t": self._grid, "h": self._h, "h_prime": self._h_prime})

    def __repr__(self) -> str:
        return (f"WarpingFunction(profile={self.profile.variant}, t_max={self.t_max}, "
                f"steps={len(self._grid) - 1}, closed_form={self.closed_form_tag})")
