"""
Moment Solver
出口時間矩求解器

以遞迴
    u^k(t) = k ∫_t^r h^{1-n}(τ) ∫_0^τ h^{n-1}(s) u^{k-1}(s) ds dτ,   u^0 ≡ 1
在模型球上計算所有階的出口時間矩。
"""

from collections import OrderedDict
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import InvalidInput, NegativeOrder, OutOfRange
from ..warping.warping_function import WarpingFunction
from .model_ball import ModelBall
from .moment_table import MomentTable
from .radial_quadrature import RadialQuadrature


class MomentSolver:
    """出口時間矩求解器"""

    def __init__(self, grid_size: int = 4096, richardson: bool = False,
                 reporter: Optional[ConsoleReporter] = None, cache_size: int = 32):
        """
        初始化求解器

        Args:
            grid_size: 徑向格點區間數
            richardson: 是否以 N 與 2N 格點做 Richardson 外推
            reporter: 進度回報器
            cache_size: 最多保留的矩表格數，超過時移除最久未用的
        """
        if grid_size < 16:
            raise InvalidInput(f"格點數過少: {grid_size}")
        if cache_size < 1:
            raise InvalidInput(f"cache_size 必須為正: {cache_size}")
        self.grid_size = grid_size
        self.richardson = richardson
        self.reporter = reporter or SILENT
        self.cache_size = cache_size
        self._cache: "OrderedDict[Tuple[int, int, float], Tuple[WarpingFunction, MomentTable]]" = OrderedDict()

    def _recursion(self, ball: ModelBall, K: int, grid_size: int) -> Tuple[np.ndarray, np.ndarray]:
        quadrature = RadialQuadrature.for_warping(ball.warping, ball.r, grid_size)
        values = np.empty((K + 1, grid_size + 1))
        values[0] = 1.0
        for k in range(1, K + 1):
            values[k] = quadrature.tail_integral(ball.n - 1, k * values[k - 1])
        return quadrature.grid, values

    def moment_table(self, ball: ModelBall, K: int) -> MomentTable:
        """
        計算 u^0..u^K 表格

        Args:
            ball: 模型球
            K: 最高階數

        Returns:
            MomentTable: 矩表格
        """
        if K < 0:
            raise NegativeOrder(f"矩的階數必須非負: K={K}")

        key = (id(ball.warping), ball.n, ball.r)
        cached = self._cache.get(key)
        if cached is not None and cached[0] is ball.warping and cached[1].K >= K:
            self._cache.move_to_end(key)
            table = cached[1]
            return MomentTable(ball, table.grid, table.values[:K + 1], table.method)

        self.reporter.step(f"計算出口時間矩: n={ball.n}, r={ball.r}, K={K}")
        grid, values = self._recursion(ball, K, self.grid_size)
        if self.richardson and K > 0:
            _, fine = self._recursion(ball, K, 2 * self.grid_size)
            values = (4.0 * fine[:, ::2] - values) / 3.0
            values[:, -1] = 0.0
            values[0] = 1.0

        values.flags.writeable = False
        table = MomentTable(ball, grid, values)
        self._cache[key] = (ball.warping, table)
        self._cache.move_to_end(key)
        while len(self._cache) > self.cache_size:
            self._cache.popitem(last=False)
        self.reporter.debug(f"u^1(0) = {values[min(K, 1)][0]:.12g}")
        return table

    def exit_moment(self, ball: ModelBall, k: int, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """u^k(t)，k = 0 時回傳 1"""
        if k < 0:
            raise NegativeOrder(f"矩的階數必須非負: k={k}")
        points = np.asarray(t, dtype=float)
        if np.any(points < 0.0) or np.any(points > ball.r):
            raise OutOfRange(f"查詢點超出 [0, {ball.r}]: {t}")
        if k == 0:
            return 1.0 if points.ndim == 0 else np.ones_like(points)
        return self.moment_table(ball, k).value_at(k, points)

    def mean_exit_time(self, ball: ModelBall, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """E(t) = u^1(t)"""
        return self.exit_moment(ball, 1, t)

    def exhaustion_sequence(self, n: int, warping: WarpingFunction, k: int,
                            radii: Sequence[float]) -> List[Tuple[float, float]]:
        """
        逐漸擴大的球上 u^k(0)，用來判斷整個模型的 k 階矩是否有限

        Args:
            n: 模型維度
            warping: 翹曲函數
            k: 階數
            radii: 嚴格遞增的半徑

        Returns:
            List: (r, u^k(0))
        """
        radii = [float(r) for r in radii]
        if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
            raise InvalidInput(f"半徑必須嚴格遞增: {radii}")
        return [(r, self.exit_moment(ModelBall(n, warping, r), k, 0.0)) for r in radii]

    @staticmethod
    def hierarchy_residual(table: MomentTable, interior: float = 0.9) -> List[float]:
        """
        中央差分殘差 max |(u^k)'' + (n−1)(h'/h)(u^k)' + k u^{k−1}|，k = 1..K

        Args:
            table: 矩表格
            interior: 取格點內部的比例

        Returns:
            List[float]: 各階殘差
        """
        grid = table.grid
        step = grid[1] - grid[0]
        margin = 0.5 * (1.0 - interior) * table.ball.r
        inner = np.arange(1, len(grid) - 1)
        inner = inner[(grid[inner] >= margin) & (grid[inner] <= table.ball.r - margin)]
        log_derivative = np.asarray(table.ball.warping.log_derivative(grid[inner]))

        residuals = []
        for k in range(1, table.K + 1):
            u = table.values[k]
            first = (u[inner + 1] - u[inner - 1]) / (2.0 * step)
            second = (u[inner + 1] - 2.0 * u[inner] + u[inner - 1]) / step ** 2
            residual = second + (table.ball.n - 1) * log_derivative * first + k * table.values[k - 1][inner]
            residuals.append(float(np.max(np.abs(residual))))
        return residuals
