"""
Verification Suite
驗收流程管理器

依序執行各驗收階段（臨界球冠 Barta 數值、特徵值基準、閉式解、tower 上界、
Poisson 階層殘差、翹曲錐、判準範例、蒙地卡羅），彙整成通過/失敗表
"""

import math
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from ..criteria.cases import CylinderCase, WedgeCase
from ..criteria.criteria_checker import CriteriaChecker
from ..moments.bounds import tower_bound
from ..moments.model_ball import BoundSpec, ModelBall
from ..moments.moment_solver import MomentSolver
from ..moments.reference_oracle import reference_exit_moment
from ..simulation.radial_simulator import RadialSimulator
from ..simulation.sim_config import SimConfig
from ..spectral.barta_bound import BartaBound
from ..spectral.cap_shooting import CapShooting
from ..spectral.cap_spec import CapSpec
from ..spectral.cone_criteria import barta_grid, cone_finite_met, critical_cap_radius
from ..spectral.warped_cone import WarpedCone, WarpedConeSpec, WarpProfile
from ..utils.config_loader import ConfigLoader
from ..utils.console_reporter import ConsoleReporter, SILENT
from ..utils.errors import HorizonTooSmall, InvalidInput
from ..warping.curvature_profile import CurvatureProfile
from ..warping.warping_solver import WarpingSolver

CRITICAL_CAP_BARTA = {3: 5.85, 4: 7.60, 5: 9.28}
CRITICAL_CAP_TOL = 0.02


def _check(stage: str, name: str, expected: Any, observed: Any, tolerance: float, passed: bool) -> Dict[str, Any]:
    return {
        "stage": stage,
        "check": name,
        "expected": expected,
        "observed": observed,
        "tolerance": tolerance,
        "passed": bool(passed),
    }


class VerificationSuite:
    """驗收流程管理器"""

    def __init__(self, config: Optional[ConfigLoader] = None, quick: bool = False,
                 reporter: Optional[ConsoleReporter] = None):
        """
        初始化驗收流程

        Args:
            config: 數值配置
            quick: 快速模式（較少路徑與隨機案例）
            reporter: 進度回報器
        """
        self.config = config or ConfigLoader()
        self.quick = quick
        self.reporter = reporter or SILENT

        self.warping_solver = WarpingSolver(self.config.get("warping", "grid_steps"))
        self.tol = self.config.get("warping", "tol")
        self.grid_size = self.config.get("moments", "grid_size")
        self.moments = MomentSolver(self.grid_size)
        self.barta = BartaBound(self.config.get("spectral", "barta_grid"),
                                self.config.get("spectral", "refine_tol"))
        self.shooting = CapShooting()
        self.shooting_tol = self.config.get("spectral", "shooting_tol")
        self.criteria = CriteriaChecker(self.warping_solver, self.tol, self.grid_size)

        self.stages: Dict[str, Callable[[], List[Dict[str, Any]]]] = {
            "critical_caps": self.stage_critical_caps,
            "shooting_oracles": self.stage_shooting_oracles,
            "barta_vs_shooting": self.stage_barta_vs_shooting,
            "closed_forms": self.stage_closed_forms,
            "moment_oracle": self.stage_moment_oracle,
            "tower_bound": self.stage_tower_bound,
            "hierarchy_residual": self.stage_hierarchy_residual,
            "warped_cone": self.stage_warped_cone,
            "predicates": self.stage_predicates,
            "monte_carlo": self.stage_monte_carlo,
        }

    def run(self, stages: Optional[Iterable[str]] = None) -> pd.DataFrame:
        """
        執行驗收階段

        Args:
            stages: 要執行的階段名稱，None 表示全部

        Returns:
            pd.DataFrame: 每項檢查一列
        """
        selected = list(stages) if stages is not None else list(self.stages)
        unknown = [name for name in selected if name not in self.stages]
        if unknown:
            raise InvalidInput(f"未知的驗收階段: {unknown}")

        rows: List[Dict[str, Any]] = []
        for i, name in enumerate(selected, 1):
            self.reporter.step(f"階段 {i}/{len(selected)}: {name}")
            stage_rows = self.stages[name]()
            failed = sum(not row["passed"] for row in stage_rows)
            if failed:
                self.reporter.warning(f"{name}: {failed}/{len(stage_rows)} 項未通過")
            else:
                self.reporter.success(f"{name}: {len(stage_rows)} 項全部通過")
            rows.extend(stage_rows)

        table = pd.DataFrame(rows, columns=["stage", "check", "expected", "observed", "tolerance", "passed"])
        self.reporter.stats(f"總計 {int(table['passed'].sum())}/{len(table)} 項通過")
        return table

    # ------------------------------------------------------------------
    # 譜方法
    # ------------------------------------------------------------------
    def stage_critical_caps(self) -> List[Dict[str, Any]]:
        rows = []
        for m, expected in CRITICAL_CAP_BARTA.items():
            cap = CapSpec(m, critical_cap_radius(m))
            value = self.barta.lower_bound(cap).value
            rows.append(_check("critical_caps", f"barta m={m}", expected, value, CRITICAL_CAP_TOL,
                               abs(value - expected) <= CRITICAL_CAP_TOL))
            rows.append(_check("critical_caps", f"barta m={m} not above 2m", False, cone_finite_met(value, m),
                               0.0, not cone_finite_met(value, m)))
        return rows

    def stage_shooting_oracles(self) -> List[Dict[str, Any]]:
        cases = [(2, math.pi / 4.0, 4.0), (3, math.pi / 2.0, 2.0)]
        cases += [(m, critical_cap_radius(m), 2.0 * m) for m in (3, 4, 5)]
        rows = []
        for m, r, expected in cases:
            value = self.shooting.eigenvalue(CapSpec(m, r), self.shooting_tol).value
            rows.append(_check("shooting_oracles", f"shooting m={m} r={r:.6g}", expected, value, 1e-6,
                               abs(value - expected) <= 1e-6))
        return rows

    def stage_barta_vs_shooting(self) -> List[Dict[str, Any]]:
        radii = [math.pi / 8.0, math.pi / 6.0, math.pi / 4.0, math.pi / 3.0]
        records = barta_grid(range(2, 7), radii, self.barta, self.shooting)
        excess = max(record["barta"] - record["shooting"] for record in records)
        rows = [_check("barta_vs_shooting", "max(barta - shooting)", "<= 1e-6", excess, 1e-6, excess <= 1e-6)]

        by_m: Dict[int, List[float]] = {}
        for record in records:
            by_m.setdefault(record["m"], []).append(record["shooting"])
        monotone = all(all(b < a for a, b in zip(values, values[1:])) for values in by_m.values())
        rows.append(_check("barta_vs_shooting", "shooting decreasing in r", True, monotone, 0.0, monotone))
        return rows

    def stage_warped_cone(self) -> List[Dict[str, Any]]:
        grid_size = 20001 if self.quick else self.config.get("warped_cone", "grid_size")
        horizon = self.config.get("warped_cone", "horizon")
        cone = WarpedCone(grid_size)
        rows = []
        for alpha in (0.0, 1.0, 5.0):
            warp = WarpProfile.linear(alpha, 1.0)
            for lam, expected in ((3.5, False), (4.5, True)):
                spec = WarpedConeSpec(2, warp, lam, 0.1, horizon)
                try:
                    result = cone.condition(spec)
                except HorizonTooSmall:
                    rows.append(_check("warped_cone", f"alpha={alpha} lambda={lam}", expected,
                                       "horizon_too_small", 0.0, False))
                    continue
                rows.append(_check("warped_cone", f"alpha={alpha} lambda={lam}", expected, result.satisfiable,
                                   0.0, result.satisfiable == expected))
            tail = cone.condition(WarpedConeSpec(2, warp, 4.5, 0.1, horizon)).tail_F
            rows.append(_check("warped_cone", f"alpha={alpha} F(horizon)", 0.25, tail, 0.005,
                               abs(tail - 0.25) <= 0.005))
        return rows

    # ------------------------------------------------------------------
    # 出口時間矩
    # ------------------------------------------------------------------
    def _ball(self, profile: CurvatureProfile, n: int, r: float) -> ModelBall:
        return ModelBall(n, self.warping_solver.solve(profile, r, self.tol), r)

    def stage_closed_forms(self) -> List[Dict[str, Any]]:
        worst = 0.0
        for n in (2, 3, 5):
            for r in (0.5, 1.0, 2.0):
                ball = self._ball(CurvatureProfile.euclidean(), n, r)
                for t in (0.0, 0.5 * r, 0.75 * r):
                    exact = (r * r - t * t) / (2.0 * n)
                    worst = max(worst, abs(self.moments.mean_exit_time(ball, t) - exact) / exact)
        rows = [_check("closed_forms", "flat mean exit time (max rel. error)", 0.0, worst, 1e-8, worst <= 1e-8)]

        value = self.moments.mean_exit_time(self._ball(CurvatureProfile.constant(1.0), 2, 1.0), 0.0)
        exact = 2.0 * math.log(math.cosh(0.5))
        rows.append(_check("closed_forms", "hyperbolic n=2 r=1 E(0)", exact, value, 1e-8,
                           abs(value - exact) <= 1e-8))
        return rows

    def stage_moment_oracle(self) -> List[Dict[str, Any]]:
        ball = self._ball(CurvatureProfile.euclidean(), 2, 1.0)
        value = self.moments.exit_moment(ball, 2, 0.0)
        oracle = reference_exit_moment(ball, 2, 0.0)
        return [
            _check("moment_oracle", "u2(0) vs fine-grid oracle", oracle, value, 1e-6, abs(value - oracle) <= 1e-6),
            _check("moment_oracle", "u2(0) vs 3/32", 3.0 / 32.0, value, 1e-6, abs(value - 3.0 / 32.0) <= 1e-6),
        ]

    def stage_tower_bound(self) -> List[Dict[str, Any]]:
        rng = np.random.default_rng(self.config.get("simulation", "seed"))
        instances = 10 if self.quick else 50
        worst = -math.inf
        for _ in range(instances):
            if rng.random() < 0.5:
                profile = CurvatureProfile.constant(float(rng.uniform(0.0, 2.0)))
            else:
                profile = CurvatureProfile.polynomial(rng.uniform(0.0, 1.0, size=3).tolist())
            n = int(rng.integers(2, 6))
            r = float(rng.uniform(0.3, 1.5))
            k = int(rng.integers(1, 5))
            ball = self._ball(profile, n, r)
            table = self.moments.moment_table(ball, k)
            bound = tower_bound(BoundSpec(n, 0, float(n), r, ball.warping), k, self.grid_size)
            worst = max(worst, float(np.max(table.values[k])) - bound)
        return [_check("tower_bound", f"max(u^k - k! E^k) over {instances} instances", "<= 1e-9", worst, 1e-9,
                       worst <= 1e-9)]

    def stage_hierarchy_residual(self) -> List[Dict[str, Any]]:
        rows = []
        for label, profile, n in (("flat n=2", CurvatureProfile.euclidean(), 2),
                                  ("hyperbolic n=3", CurvatureProfile.constant(1.0), 3)):
            table = self.moments.moment_table(self._ball(profile, n, 1.0), 3)
            worst = max(self.moments.hierarchy_residual(table))
            rows.append(_check("hierarchy_residual", label, 0.0, worst, 1e-3, worst <= 1e-3))
        return rows

    # ------------------------------------------------------------------
    # 判準
    # ------------------------------------------------------------------
    def stage_predicates(self) -> List[Dict[str, Any]]:
        flat, hyperbolic = CurvatureProfile.euclidean(), CurvatureProfile.constant(1.0)
        coth1 = 1.0 / np.tanh(1.0)
        reports = [
            ("theorem1 minimal", True, self.criteria.check_theorem1(CylinderCase(3, 1, flat, 1.0, 0.0, 2.0))),
            ("theorem1 equality", True,
             self.criteria.check_theorem1(CylinderCase(4, 1, hyperbolic, 1.0, 2.0 * coth1, 1.0))),
            ("theorem1 negative", False, self.criteria.check_theorem1(CylinderCase(3, 2, flat, 1.0, 0.0, 2.0))),
            ("theorem2 finite", True, self.criteria.check_theorem2(3, 1, 1.0, 1.0, 2.0)),
            ("theorem2 far", True, self.criteria.check_theorem2(3, 1, 1.0, 1e3, 2.0)),
            ("theorem2 large H", False, self.criteria.check_theorem2(2, 1, 4.0, 0.5, 10.0)),
            ("wedge m=2", False, self.criteria.check_wedge(WedgeCase(2, 1, 1, 1, 1.0))),
            ("wedge m=4", True, self.criteria.check_wedge(WedgeCase(4, 2, 1, 0, 1.0))),
            ("wedge m=5", True, self.criteria.check_wedge(WedgeCase(5, 2, 2, 0, 1.0))),
            ("cone m=2 pi/4", True, self.criteria.check_cone(2, math.pi / 4.0)),
            ("cone m=3 critical", True, self.criteria.check_cone(3, math.atan(math.sqrt(2.0)))),
            ("cone m=2 pi/3", False, self.criteria.check_cone(2, math.pi / 3.0)),
        ]
        rows = [_check("predicates", name, expected, report.verdict, 0.0, report.verdict == expected)
                for name, expected, report in reports]

        bound = reports[0][2].bound
        rows.append(_check("predicates", "theorem1 minimal bound", 0.25, bound, 1e-8,
                           bound is not None and abs(bound - 0.25) <= 1e-8))
        for lam, ell, expected in ((4.0, 2, False), (5.85, 2, True), (7.60, 4, False)):
            verdict = cone_finite_met(lam, ell)
            rows.append(_check("predicates", f"cone_finite_met({lam}, {ell})", expected, verdict, 0.0,
                               verdict == expected))
        return rows

    # ------------------------------------------------------------------
    # 蒙地卡羅
    # ------------------------------------------------------------------
    def stage_monte_carlo(self) -> List[Dict[str, Any]]:
        paths = 20000 if self.quick else self.config.get("simulation", "paths")
        ball = self._ball(CurvatureProfile.euclidean(), 2, 1.0)
        config = SimConfig(ball, 0.0, paths, self.config.get("simulation", "dt"),
                           self.config.get("simulation", "seed"), 2,
                           block_size=self.config.get("simulation", "block_size"),
                           workers=self.config.get("simulation", "workers"))
        result = RadialSimulator(self.reporter).simulate_exit(config)

        rows = []
        for k, expected in ((1, 0.25), (2, 3.0 / 32.0)):
            mean, se = result.estimate(k)
            rows.append(_check("monte_carlo", f"E[tau^{k}]", expected, mean, 3.0 * se,
                               abs(mean - expected) <= 3.0 * se))
        return rows


def summarize(table: pd.DataFrame) -> Dict[str, Any]:
    """驗收結果統計"""
    return {
        "total": int(len(table)),
        "passed": int(table["passed"].sum()),
        "failed": int((~table["passed"]).sum()),
    }
