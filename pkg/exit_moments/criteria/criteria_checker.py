"""
Criteria Checker
判準檢查器

圓柱浸入、雙曲空間柱、楔形與錐的判準，輸出含閾值的結構化報告
"""

import math
from typing import Any, Dict, List, Optional

import pandas as pd

from ..moments.bounds import theorem1_bound
from ..moments.model_ball import BoundSpec
from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import DegenerateCone, InvalidInput, NonPositiveB
from ..warping.curvature_profile import CurvatureProfile
from ..warping.warping_solver import WarpingSolver
from .cases import CONE, THEOREM1, THEOREM2, WEDGE, CriterionReport, CylinderCase, WedgeCase


def _field(case: Dict[str, Any], key: str, cast):
    try:
        return cast(case[key])
    except KeyError as e:
        raise InvalidInput(f"{case.get('criterion')} 案例缺少欄位 {key}") from e
    except (TypeError, ValueError) as e:
        raise InvalidInput(f"欄位 {key} 格式錯誤: {case[key]!r}") from e


class CriteriaChecker:
    """判準檢查器"""

    def __init__(self, solver: Optional[WarpingSolver] = None, tol: float = 1e-10,
                 grid_size: int = 4096, reporter: Optional[ConsoleReporter] = None):
        """
        Args:
            solver: 翹曲函數求解器
            tol: 翹曲函數容許誤差
            grid_size: 上界積分格點數
            reporter: 進度回報器
        """
        self.solver = solver or WarpingSolver()
        self.tol = tol
        self.grid_size = grid_size
        self.reporter = reporter or SILENT

    def check_theorem1(self, case: CylinderCase) -> CriterionReport:
        """max|H| ≤ (m−ℓ−η)·(h'/h)(r_D)，成立時附上平均出口時間上界"""
        warping = self.solver.solve(case.profile, case.r_D, self.tol)
        coefficient = case.m - case.ell - case.eta
        threshold = coefficient * warping.log_derivative(case.r_D)
        verdict = bool(case.max_H <= threshold)

        notes = []
        if coefficient < 0:
            notes.append("m − ℓ − η < 0，閾值為負，判準不可能成立")
        if not 0.0 < case.eta <= case.m - case.ell:
            notes.append(f"η={case.eta} 不在 (0, m−ℓ] 內")

        bound = None
        if verdict and case.eta > 0.0:
            bound = theorem1_bound(BoundSpec(case.m, case.ell, case.eta, case.r_D, warping), self.grid_size)
        return CriterionReport(THEOREM1, verdict, float(threshold), "<=", case.to_dict(), bound, tuple(notes))

    def check_theorem2(self, m: int, ell: int, b: float, r_D: float, max_H: float) -> CriterionReport:
        """max|H| < (m−ℓ)√b·coth(√b r_D)"""
        if not b > 0.0:
            raise NonPositiveB(f"b 必須為正: b={b}")
        if ell < 0 or m < ell + 1:
            raise InvalidInput(f"維度需滿足 m ≥ ℓ + 1: m={m}, ℓ={ell}")
        if not (r_D > 0.0 and max_H >= 0.0):
            raise InvalidInput(f"需要 r_D > 0 且 max_H ≥ 0: r_D={r_D}, max_H={max_H}")

        root = math.sqrt(b)
        base = (m - ell) * root
        # coth(x) − 1 = 2/expm1(2x)，大 r_D 時 coth 會捨入成 1
        excess = base * 2.0 / math.expm1(2.0 * root * r_D) if 2.0 * root * r_D < 700.0 else 0.0
        threshold = base / math.tanh(root * r_D)
        verdict = bool(max_H <= base or max_H - base < excess)

        inputs = {"m": m, "l": ell, "b": b, "r_D": r_D, "max_H": max_H}
        notes = ("結論中的常數 C 無顯式公式，只輸出判定",)
        return CriterionReport(THEOREM2, verdict, threshold, "<", inputs, None, notes)

    def check_wedge(self, case: WedgeCase) -> CriterionReport:
        """γ = m − (α²+1)ℓ − k > 0"""
        gamma = case.gamma
        notes = ()
        if case.n < 2:
            notes = (f"n={case.n} < 2，楔形判準假設 n ≥ 2",)
        return CriterionReport(WEDGE, bool(gamma > 0.0), float(gamma), ">", case.to_dict(), None, notes)

    def check_cone(self, m: int, theta: float) -> CriterionReport:
        """tan θ ≤ √(m−1)，閾值為臨界角 arctan√(m−1)"""
        if m < 2:
            raise InvalidInput(f"m 必須 ≥ 2: m={m}")
        if theta >= math.pi / 2.0:
            raise DegenerateCone(f"錐角 θ={theta} 必須小於 π/2")
        if not theta > 0.0:
            raise InvalidInput(f"錐角必須為正: θ={theta}")

        critical = math.atan(math.sqrt(m - 1))
        verdict = bool(theta <= critical)
        inputs = {"m": m, "theta": theta, "tan_theta": math.tan(theta), "sqrt_m_minus_1": math.sqrt(m - 1)}
        return CriterionReport(CONE, verdict, critical, "<=", inputs, None, ())

    def evaluate(self, case: Dict[str, Any]) -> CriterionReport:
        """
        依 criterion 欄位分派單一案例

        Args:
            case: {"criterion": "theorem1" | "theorem2" | "wedge" | "cone", ...}

        Returns:
            CriterionReport: 報告
        """
        if not isinstance(case, dict) or "criterion" not in case:
            raise InvalidInput(f"案例缺少 criterion 欄位: {case!r}")
        kind = case["criterion"]
        if kind == THEOREM1:
            return self.check_theorem1(CylinderCase(
                _field(case, "m", int), _field(case, "l", int),
                CurvatureProfile.from_dict(_field(case, "profile", dict)),
                _field(case, "r_D", float), _field(case, "max_H", float), _field(case, "eta", float)))
        if kind == THEOREM2:
            return self.check_theorem2(_field(case, "m", int), _field(case, "l", int), _field(case, "b", float),
                                       _field(case, "r_D", float), _field(case, "max_H", float))
        if kind == WEDGE:
            return self.check_wedge(WedgeCase(_field(case, "m", int), _field(case, "n", int),
                                              _field(case, "l", int), _field(case, "k", int),
                                              _field(case, "alpha", float)))
        if kind == CONE:
            return self.check_cone(_field(case, "m", int), _field(case, "theta", float))
        raise InvalidInput(f"未知的判準: {kind}")

    def evaluate_batch(self, cases: List[Dict[str, Any]]) -> List[CriterionReport]:
        if not isinstance(cases, list):
            raise InvalidInput("批次輸入必須是 JSON 陣列")
        reports = []
        for i, case in enumerate(cases, 1):
            report = self.evaluate(case)
            self.reporter.info(f"案例 {i}/{len(cases)}: {report.criterion_id} → {report.verdict}")
            reports.append(report)
        return reports

    @staticmethod
    def summary_frame(reports: List[CriterionReport]) -> pd.DataFrame:
        return pd.DataFrame({
            "criterion_id": [report.criterion_id for report in reports],
            "verdict": [report.verdict for report in reports],
            "threshold": [report.threshold for report in reports],
        })
