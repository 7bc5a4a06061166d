"""
Criterion Cases
判準輸入與報告類型
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from ..utils.errors import InvalidInput
from ..warping.curvature_profile import CurvatureProfile

THEOREM1 = "theorem1"
THEOREM2 = "theorem2"
WEDGE = "wedge"
CONE = "cone"
CRITERIA = (THEOREM1, THEOREM2, WEDGE, CONE)


@dataclass(frozen=True)
class CylinderCase:
    """圓柱型浸入的平均曲率判準輸入"""

    m: int
    ell: int
    profile: CurvatureProfile
    r_D: float
    max_H: float
    eta: float

    def __post_init__(self):
        if self.ell < 0 or self.m < self.ell + 1:
            raise InvalidInput(f"維度需滿足 m ≥ ℓ + 1 且 ℓ ≥ 0: m={self.m}, ℓ={self.ell}")
        if not self.r_D > 0.0:
            raise InvalidInput(f"r_D 必須為正: {self.r_D}")
        if not self.max_H >= 0.0:
            raise InvalidInput(f"平均曲率上界必須非負: {self.max_H}")

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "l": self.ell, "profile": self.profile.to_dict(),
                "r_D": self.r_D, "max_H": self.max_H, "eta": self.eta}


@dataclass(frozen=True)
class WedgeCase:
    """楔形區域判準輸入"""

    m: int
    n: int
    ell: int
    k: int
    alpha: float

    def __post_init__(self):
        if self.ell < 1 or self.k < 0 or self.n < 1:
            raise InvalidInput(f"需要 n ≥ 1, ℓ ≥ 1, k ≥ 0: n={self.n}, ℓ={self.ell}, k={self.k}")
        if not self.alpha > 0.0:
            raise InvalidInput(f"α 必須為正: {self.alpha}")

    @property
    def gamma(self) -> float:
        return self.m - (self.alpha ** 2 + 1.0) * self.ell - self.k

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "n": self.n, "l": self.ell, "k": self.k, "alpha": self.alpha}


@dataclass(frozen=True)
class CriterionReport:
    """判準報告"""

    criterion_id: str
    verdict: bool
    threshold: float
    comparison: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    bound: Optional[float] = None
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion_id,
            "verdict": self.verdict,
            "threshold": self.threshold,
            "comparison": self.comparison,
            "inputs": self.inputs,
            "bound": self.bound,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CriterionReport":
        try:
            return cls(
                criterion_id=data["criterion"],
                verdict=bool(data["verdict"]),
                threshold=float(data["threshold"]),
                comparison=data["comparison"],
                inputs=dict(data.get("inputs", {})),
                bound=None if data.get("bound") is None else float(data["bound"]),
                notes=tuple(data.get("notes", ())),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInput(f"判準報告格式錯誤: {data!r}") from e
