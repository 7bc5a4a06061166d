"""
Warped Cone Condition
翹曲錐條件

P^ℓ = [0, ∞) ×_w L^{ℓ−1} 上的截斷錐 C_Ω(r₀) 有有限平均出口時間的充分條件：
存在 c > 1/λ 使
    F(t) = w^{-2}(t) ∫_0^t ψ(s)/ψ'(s) ds ≥ c/(cλ − 1),  ψ(t) = ∫_0^t w^{ℓ−1},
對所有 t ≥ r₀ 成立。c ↦ c/(cλ − 1) 在 (1/λ, ∞) 上遞減到 1/λ，
所以條件可滿足等價於 F 在尾段的下確界大於 1/λ。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad

from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import HorizonTooSmall, InvalidC, InvalidInput
from ..utils.result_writer import ResultWriter

LINEAR = "linear"
TABULATED = "tabulated"

STOCHASTIC_COMPLETENESS_NOTE = "若 L = 𝕊^{ℓ−1}，尾段極限的推導需要 P^ℓ 隨機完備（未檢查）"


@dataclass(frozen=True)
class WarpProfile:
    """錐的翹曲函數 w"""

    variant: str
    alpha: float = 0.0
    k: float = 0.0
    knots: Tuple[Tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        if self.variant == LINEAR:
            if self.alpha < 0.0 or self.k < 0.0:
                raise InvalidInput(f"線性翹曲需要 α ≥ 0, k ≥ 0: α={self.alpha}, k={self.k}")
            if self.alpha == 0.0 and self.k == 0.0:
                raise InvalidInput("線性翹曲的 α 與 k 不可同時為 0")
        elif self.variant == TABULATED:
            if len(self.knots) < 2:
                raise InvalidInput("表格翹曲至少需要兩個節點")
            ts, ws = self._knot_arrays()
            if np.any(np.diff(ts) <= 0.0):
                raise InvalidInput("表格翹曲節點必須嚴格遞增")
            if ts[0] > 0.0 or np.any(ws < 0.0) or np.any(ws[ts > 0.0] == 0.0):
                raise InvalidInput("表格翹曲必須從 t ≤ 0 開始，且在 t > 0 時為正")
        else:
            raise InvalidInput(f"未知的翹曲類型: {self.variant}")

    @classmethod
    def linear(cls, alpha: float, k: float) -> "WarpProfile":
        return cls(LINEAR, alpha=float(alpha), k=float(k))

    @classmethod
    def tabulated(cls, knots: Sequence[Sequence[float]]) -> "WarpProfile":
        return cls(TABULATED, knots=tuple((float(t), float(w)) for t, w in knots))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WarpProfile":
        try:
            if data["variant"] == LINEAR:
                return cls.linear(data["alpha"], data["k"])
            if data["variant"] == TABULATED:
                return cls.tabulated(data["knots"])
        except (KeyError, TypeError) as e:
            raise InvalidInput(f"翹曲文件格式錯誤: {data!r}") from e
        raise InvalidInput(f"未知的翹曲類型: {data.get('variant')}")

    @classmethod
    def load(cls, path: str) -> "WarpProfile":
        return cls.from_dict(ResultWriter.load_json(path))

    def to_dict(self) -> Dict[str, Any]:
        if self.variant == LINEAR:
            return {"variant": LINEAR, "alpha": self.alpha, "k": self.k}
        return {"variant": TABULATED, "knots": [list(knot) for knot in self.knots]}

    @property
    def last_knot(self) -> float:
        return self.knots[-1][0] if self.variant == TABULATED else float("inf")

    def values(self, t):
        points = np.asarray(t, dtype=float)
        if self.variant == LINEAR:
            return self.alpha + self.k * points
        ts, ws = self._knot_arrays()
        return np.interp(points, ts, ws)

    def _knot_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return (np.array([knot[0] for knot in self.knots], dtype=float),
                np.array([knot[1] for knot in self.knots], dtype=float))


@dataclass(frozen=True)
class WarpedConeSpec:
    """截斷翹曲錐"""

    ell: int
    warp: WarpProfile
    lam: float
    r0: float
    horizon: float = 1000.0

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell < 2:
            raise InvalidInput(f"錐的維度 ℓ 必須為 ≥ 2 的整數: ℓ={self.ell}")
        if not self.lam > 0.0:
            raise InvalidInput(f"λ 必須為正: λ={self.lam}")
        if not 0.0 < self.r0 < self.horizon:
            raise InvalidInput(f"需要 0 < r₀ < horizon: r₀={self.r0}, horizon={self.horizon}")
        if self.warp.last_knot < self.horizon:
            raise InvalidInput(f"表格翹曲只定義到 {self.warp.last_knot}，不足 horizon={self.horizon}")


@dataclass(frozen=True)
class WarpedConeResult:
    """翹曲錐條件的判定結果"""

    satisfiable: bool
    inf_F: float
    inf_at: float
    tail_F: float
    tail_drift: float
    effective_r0: Optional[float]
    c_witness: Optional[float]
    decreasing_at_horizon: bool
    asymptotic_diagnostic: float
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "satisfiable": self.satisfiable,
            "inf_F": self.inf_F,
            "inf_at": self.inf_at,
            "tail_F": self.tail_F,
            "tail_drift": self.tail_drift,
            "effective_r0": self.effective_r0,
            "c_witness": self.c_witness,
            "decreasing_at_horizon": self.decreasing_at_horizon,
            "asymptotic_diagnostic": self.asymptotic_diagnostic,
            "notes": list(self.notes),
        }


class WarpedCone:
    """翹曲錐條件計算器"""

    def __init__(self, grid_size: int = 200001, reporter: Optional[ConsoleReporter] = None):
        if grid_size < 64:
            raise InvalidInput(f"格點數過少: {grid_size}")
        self.grid_size = grid_size
        self.reporter = reporter or SILENT

    def _grid(self, spec: WarpedConeSpec) -> np.ndarray:
        # r₀ 是格點
        inner_count = max(64, int(np.ceil(self.grid_size * spec.r0 / spec.horizon)))
        inner = np.linspace(0.0, spec.r0, inner_count, endpoint=False)
        outer = np.linspace(spec.r0, spec.horizon, self.grid_size)
        return np.concatenate((inner, outer))

    @staticmethod
    def _ratio(spec: WarpedConeSpec, grid: np.ndarray) -> np.ndarray:
        """ψ/ψ' 在格點上的值，t = 0 處為 0"""
        warp = spec.warp
        w = warp.values(grid)
        ratio = np.zeros_like(grid)
        positive = grid > 0.0
        if warp.variant == LINEAR:
            if warp.k == 0.0:
                ratio[positive] = grid[positive]
            else:
                # ψ/ψ' = w (1 − (α/w)^ℓ) / (kℓ)
                with np.errstate(divide="ignore"):
                    log_ratio = np.log(warp.alpha / w[positive])
                ratio[positive] = -w[positive] * np.expm1(spec.ell * log_ratio) / (warp.k * spec.ell)
            return ratio

        power = w ** (spec.ell - 1)
        psi = cumulative_trapezoid(power, grid, initial=0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[positive] = np.where(power[positive] > 0.0, psi[positive] / power[positive], 0.0)
        return ratio

    def profile(self, spec: WarpedConeSpec) -> Tuple[np.ndarray, np.ndarray]:
        """
        F(t) 在 [r₀, horizon] 上的格點值

        Args:
            spec: 翹曲錐

        Returns:
            Tuple: (t, F)
        """
        grid = self._grid(spec)
        integral = cumulative_trapezoid(self._ratio(spec, grid), grid, initial=0.0)
        window = grid >= spec.r0
        t = grid[window]
        return t, integral[window] / spec.warp.values(t) ** 2

    def _diagnostic(self, spec: WarpedConeSpec, t: np.ndarray) -> float:
        """horizon 處的 w²(ℓH² − K) = ℓ w'² + w w''"""
        warp = spec.warp
        if warp.variant == LINEAR:
            return spec.ell * warp.k ** 2
        tail = t[-5:]
        w = warp.values(tail)
        first = np.gradient(w, tail)
        second = np.gradient(first, tail)
        return float(spec.ell * first[-1] ** 2 + w[-1] * second[-1])

    def condition(self, spec: WarpedConeSpec) -> WarpedConeResult:
        """
        判定翹曲錐條件

        Args:
            spec: 翹曲錐

        Returns:
            WarpedConeResult: 判定結果
        """
        self.reporter.step(f"翹曲錐條件: ℓ={spec.ell}, λ={spec.lam}, r₀={spec.r0}, horizon={spec.horizon}")
        t, F = self.profile(spec)
        threshold = 1.0 / spec.lam

        index = int(np.argmin(F))
        inf_F, inf_at = float(F[index]), float(t[index])
        tail_F = float(F[-1])
        half = int(np.searchsorted(t, 0.5 * spec.horizon))
        tail_drift = abs(tail_F - float(F[min(half, len(F) - 1)]))
        decreasing = bool(F[-1] < F[-2] - 1e-12 * abs(F[-2]))
        diagnostic = self._diagnostic(spec, t)
        notes = [STOCHASTIC_COMPLETENESS_NOTE, f"horizon 處 w²(ℓH² − K) = {diagnostic:.6g}"]

        if decreasing and abs(tail_F - threshold) <= tail_drift:
            raise HorizonTooSmall(
                f"F 在 horizon={spec.horizon} 仍遞減且距 1/λ={threshold:.6g} 在漂移範圍 {tail_drift:.3g} 內",
                partial={"inf_F": inf_F, "tail_F": tail_F, "tail_drift": tail_drift, "threshold": threshold},
            )

        suffix_min = np.minimum.accumulate(F[::-1])[::-1]
        effective_r0: Optional[float] = None
        c_witness: Optional[float] = None
        satisfiable = False
        if inf_F > threshold:
            satisfiable, effective_r0, floor = True, float(spec.r0), inf_F
        elif tail_F > threshold:
            target = 0.5 * (threshold + tail_F)
            start = int(np.argmax(suffix_min >= target))
            satisfiable, effective_r0, floor = True, float(t[start]), float(suffix_min[start])
            notes.append(f"r₀ 外移至 {effective_r0:.6g} 才滿足條件")

        if satisfiable:
            c_witness = floor / (floor * spec.lam - 1.0)
            self.reporter.success(f"條件可滿足: c = {c_witness:.12g}")
        else:
            self.reporter.info(f"條件不可滿足: inf F = {inf_F:.12g} ≤ 1/λ = {threshold:.12g}")

        return WarpedConeResult(satisfiable, inf_F, inf_at, tail_F, tail_drift, effective_r0, c_witness,
                                decreasing, diagnostic, tuple(notes))

    def supersolution(self, spec: WarpedConeSpec, c: float,
                      t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """
        超解 u(t) = (cλ − 1) ∫_0^t ψ/ψ'

        Args:
            spec: 翹曲錐
            c: 常數，需大於 1/λ
            t: 查詢點 ≥ 0

        Returns:
            u(t)
        """
        if not c > 1.0 / spec.lam:
            raise InvalidC(f"c 必須大於 1/λ = {1.0 / spec.lam:.6g}: c={c}")
        points = np.asarray(t, dtype=float)
        if np.any(points < 0.0) or np.any(points > spec.warp.last_knot):
            raise InvalidInput(f"查詢點必須在 [0, {spec.warp.last_knot}] 內: {t}")

        if spec.warp.variant == LINEAR:
            def integrand(s: float) -> float:
                return float(self._ratio(spec, np.array([s]))[0])
        else:
            grid = np.linspace(0.0, spec.warp.last_knot, self.grid_size)
            table = self._ratio(spec, grid)

            def integrand(s: float) -> float:
                return float(np.interp(s, grid, table))

        scale = c * spec.lam - 1.0
        values = np.array([scale * quad(integrand, 0.0, point, limit=200)[0] if point > 0.0 else 0.0
                           for point in points.ravel()])
        return float(values[0]) if points.ndim == 0 else values.reshape(points.shape)
