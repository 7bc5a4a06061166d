"""
Curvature Profile
徑向曲率剖面

G(t) ≥ 0 定義翹曲方程 h'' = G h。支援三種形式：
常數、多項式（係數由低次到高次）、分段線性表格。
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from ..utils.errors import InvalidInput, InvalidProfile
from ..utils.result_writer import ResultWriter

ArrayLike = Union[float, Sequence[float], np.ndarray]

CONSTANT = "constant"
POLYNOMIAL = "polynomial"
TABULATED = "tabulated"
VARIANTS = (CONSTANT, POLYNOMIAL, TABULATED)


@dataclass(frozen=True)
class CurvatureProfile:
    """徑向曲率剖面 G"""

    variant: str
    b: float = 0.0
    coefficients: Tuple[float, ...] = ()
    knots: Tuple[Tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InvalidProfile(f"未知的曲率剖面類型: {self.variant}")
        if self.variant == CONSTANT and not (np.isfinite(self.b) and self.b >= 0.0):
            raise InvalidProfile(f"常數曲率必須非負: b={self.b}")
        if self.variant == POLYNOMIAL and not self.coefficients:
            raise InvalidProfile("多項式剖面至少需要一個係數")
        if self.variant == TABULATED:
            if len(self.knots) < 2:
                raise InvalidProfile("表格剖面至少需要兩個節點")
            ts = np.array([knot[0] for knot in self.knots], dtype=float)
            gs = np.array([knot[1] for knot in self.knots], dtype=float)
            if np.any(np.diff(ts) <= 0.0):
                raise InvalidProfile("表格節點必須嚴格遞增")
            if np.any(gs < 0.0):
                raise InvalidProfile(f"表格曲率出現負值: min={gs.min()}")

    # ------------------------------------------------------------------
    # 建構
    # ------------------------------------------------------------------
    @classmethod
    def constant(cls, b: float) -> "CurvatureProfile":
        return cls(CONSTANT, b=float(b))

    @classmethod
    def euclidean(cls) -> "CurvatureProfile":
        return cls.constant(0.0)

    @classmethod
    def polynomial(cls, coefficients: Sequence[float]) -> "CurvatureProfile":
        return cls(POLYNOMIAL, coefficients=tuple(float(c) for c in coefficients))

    @classmethod
    def tabulated(cls, knots: Sequence[Sequence[float]]) -> "CurvatureProfile":
        return cls(TABULATED, knots=tuple((float(t), float(g)) for t, g in knots))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CurvatureProfile":
        """從 JSON 文件建立剖面"""
        if not isinstance(data, dict) or "variant" not in data:
            raise InvalidInput(f"曲率剖面文件缺少 variant 欄位: {data!r}")
        variant = data["variant"]
        try:
            if variant == CONSTANT:
                return cls.constant(data["b"])
            if variant == POLYNOMIAL:
                return cls.polynomial(data["coefficients"])
            if variant == TABULATED:
                return cls.tabulated(data["knots"])
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, InvalidProfile):
                raise
            raise InvalidInput(f"曲率剖面文件格式錯誤: {data!r}") from e
        raise InvalidProfile(f"未知的曲率剖面類型: {variant}")

    @classmethod
    def parse(cls, text: str) -> "CurvatureProfile":
        """
        解析命令列寫法

        Args:
            text: "constant:B"、"poly:c0,c1,..." 或 "@profile.json"

        Returns:
            CurvatureProfile: 剖面
        """
        token = text.strip()
        if token.startswith("@"):
            return cls.from_dict(ResultWriter.load_json(token[1:]))
        if token == "euclidean":
            return cls.euclidean()

        kind, _, rest = token.partition(":")
        try:
            if kind == CONSTANT:
                return cls.constant(float(rest))
            if kind in ("poly", POLYNOMIAL):
                return cls.polynomial([float(c) for c in rest.split(",") if c.strip()])
        except ValueError as e:
            if isinstance(e, InvalidProfile):
                raise
            raise InvalidInput(f"無法解析曲率剖面: {text}") from e
        raise InvalidInput(f"無法解析曲率剖面: {text}")

    def to_dict(self) -> Dict[str, Any]:
        if self.variant == CONSTANT:
            return {"variant": CONSTANT, "b": self.b}
        if self.variant == POLYNOMIAL:
            return {"variant": POLYNOMIAL, "coefficients": list(self.coefficients)}
        return {"variant": TABULATED, "knots": [list(knot) for knot in self.knots]}

    # ------------------------------------------------------------------
    # 取值
    # ------------------------------------------------------------------
    def evaluate(self, t: ArrayLike) -> Union[float, np.ndarray]:
        """G(t)，接受純量或陣列"""
        values = np.asarray(t, dtype=float)
        if self.variant == CONSTANT:
            result = np.full_like(values, self.b)
        elif self.variant == POLYNOMIAL:
            result = P.polyval(values, self.coefficients)
        else:
            ts, gs = self._knot_arrays()
            result = np.interp(values, ts, gs)
        return float(result) if result.ndim == 0 else result

    def closed_form_b(self) -> Optional[float]:
        """常數剖面回傳 b，其他形式回傳 None"""
        return self.b if self.variant == CONSTANT else None

    def series_coefficients(self) -> Tuple[float, float, float]:
        """
        原點附近 G(t) ≈ g0 + g1 t + g2 t² 的係數

        Returns:
            Tuple: (g0, g1, g2)
        """
        if self.variant == CONSTANT:
            return self.b, 0.0, 0.0
        if self.variant == POLYNOMIAL:
            padded = list(self.coefficients) + [0.0, 0.0]
            return padded[0], padded[1], padded[2]
        ts, gs = self._knot_arrays()
        g0 = float(np.interp(0.0, ts, gs))
        index = min(max(int(np.searchsorted(ts, 0.0, side="right")) - 1, 0), len(ts) - 2)
        slope = (gs[index + 1] - gs[index]) / (ts[index + 1] - ts[index])
        return g0, float(slope), 0.0

    def validate_on(self, t_max: float, samples: int = 2049) -> float:
        """
        檢查剖面在 [0, t_max] 上有效，回傳取樣最大值

        Args:
            t_max: 工作區間右端點
            samples: 取樣點數

        Returns:
            float: max G
        """
        if self.variant == TABULATED:
            ts, _ = self._knot_arrays()
            if ts[0] > 0.0 or ts[-1] < t_max:
                raise InvalidProfile(f"表格節點 [{ts[0]}, {ts[-1]}] 未覆蓋工作區間 [0, {t_max}]")
            grid = np.union1d(np.linspace(0.0, t_max, samples), ts[(ts >= 0.0) & (ts <= t_max)])
        else:
            grid = np.linspace(0.0, t_max, samples)

        values = np.asarray(self.evaluate(grid))
        if not np.all(np.isfinite(values)):
            raise InvalidProfile("曲率剖面出現非有限值")
        if values.min() < 0.0:
            worst = grid[int(np.argmin(values))]
            raise InvalidProfile(f"曲率剖面在 t={worst:.6g} 為負: G={values.min():.6g}")
        return float(values.max())

    def _knot_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        ts = np.array([knot[0] for knot in self.knots], dtype=float)
        gs = np.array([knot[1] for knot in self.knots], dtype=float)
        return ts, gs
