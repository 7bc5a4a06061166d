"""
Model Ball
模型球與界限參數

旋轉對稱模型 ds² = dt² + h²(t) dθ² 中以極點為中心的測地球，
以及平均出口時間上界所需的 (m, ℓ, η, r_D) 參數組。
"""

from dataclasses import dataclass

from ..utils.errors import EtaNonPositive, InvalidInput, OutOfRange
from ..warping.warping_function import WarpingFunction


@dataclass(frozen=True)
class ModelBall:
    """模型球 Ω_r"""

    n: int
    warping: WarpingFunction
    r: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidInput(f"模型維度必須為 ≥ 2 的整數: n={self.n}")
        if not self.r > 0.0:
            raise OutOfRange(f"球半徑必須為正: r={self.r}")
        if self.r > self.warping.t_max * (1.0 + 1e-12):
            raise OutOfRange(f"球半徑 {self.r} 超出翹曲函數區間 [0, {self.warping.t_max}]")

    def to_dict(self):
        return {"n": self.n, "r": self.r, "profile": self.warping.profile.to_dict()}


@dataclass(frozen=True)
class BoundSpec:
    """平均出口時間上界參數"""

    m: int
    ell: int
    eta: float
    r_D: float
    warping: WarpingFunction

    def __post_init__(self):
        if self.ell < 0 or self.m < self.ell + 1:
            raise InvalidInput(f"維度需滿足 m ≥ ℓ + 1 且 ℓ ≥ 0: m={self.m}, ℓ={self.ell}")
        if not self.eta > 0.0:
            raise EtaNonPositive(f"η 必須為正: η={self.eta}")
        if not self.r_D > 0.0:
            raise OutOfRange(f"r_D 必須為正: r_D={self.r_D}")
        if self.r_D > self.warping.t_max * (1.0 + 1e-12):
            raise OutOfRange(f"r_D={self.r_D} 超出翹曲函數區間 [0, {self.warping.t_max}]")

    @property
    def beta(self) -> float:
        return self.eta - 1.0
