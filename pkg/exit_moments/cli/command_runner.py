"""
Command Runner
命令列執行器

子命令: warp, met, moments, bound, barta, eigen, cone, wedge,
warped-cone, criteria, simulate, verify

退出碼: 0 成功, 1 用法錯誤, 2 數值模組錯誤, 3 驗收失敗
"""

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from ..core.verification_suite import VerificationSuite, summarize
from ..criteria.cases import CylinderCase, WedgeCase
from ..criteria.criteria_checker import CriteriaChecker
from ..moments.bounds import theorem1_bound, tower_bound
from ..moments.model_ball import BoundSpec, ModelBall
from ..moments.moment_solver import MomentSolver
from ..moments.moment_table import MONTE_CARLO, QUADRATURE
from ..simulation.radial_simulator import RadialSimulator
from ..simulation.sim_config import SimConfig
from ..spectral.barta_bound import BartaBound
from ..spectral.cap_shooting import CapShooting
from ..spectral.cap_spec import CapSpec
from ..spectral.cone_criteria import cone_finite_met
from ..spectral.warped_cone import WarpedCone, WarpedConeSpec, WarpProfile
from ..utils.config_loader import ConfigLoader
from ..utils.console_reporter import ConsoleReporter
from ..utils.errors import ExitMomentsError, InvalidInput
from ..utils.result_writer import ResultWriter
from ..utils.value_parser import parse_angle, parse_float_list
from ..warping.curvature_profile import CurvatureProfile
from ..warping.warping_solver import WarpingSolver

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MODULE_ERROR = 2
EXIT_VERIFY_FAILED = 3

TABLE_COMMANDS = {"warp", "met", "moments", "verify"}


class UsageError(Exception):
    """命令列用法錯誤"""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


@dataclass
class RunConfig:
    """單次執行設定"""

    command: str
    output: Optional[str] = None
    format: str = "json"
    verbosity: int = 1
    config_path: Optional[str] = None


@dataclass
class CommandOutput:
    """子命令輸出：JSON 報告與對應的 CSV 表格"""

    report: Any
    table: pd.DataFrame
    header_lines: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK


class CommandRunner:
    """命令列執行器"""

    def __init__(self):
        self.handlers: Dict[str, Callable[[argparse.Namespace], CommandOutput]] = {
            "warp": self._warp,
            "met": self._met,
            "moments": self._moments,
            "bound": self._bound,
            "barta": self._barta,
            "eigen": self._eigen,
            "cone": self._cone,
            "wedge": self._wedge,
            "warped-cone": self._warped_cone,
            "criteria": self._criteria,
            "simulate": self._simulate,
            "verify": self._verify,
        }
        self.reporter = ConsoleReporter(verbosity=1)
        self.config = ConfigLoader()

    # ------------------------------------------------------------------
    # 參數
    # ------------------------------------------------------------------
    def build_parser(self) -> argparse.ArgumentParser:
        common = _Parser(add_help=False)
        common.add_argument("--format", choices=["csv", "json"], default=None,
                            help="輸出格式（表格預設 csv，報告預設 json）")
        common.add_argument("--output", "-o", default=None, help="輸出檔案路徑（預設: stdout）")
        common.add_argument("--config", default=None, help="YAML 配置檔")
        common.add_argument("--verbose", "-v", action="count", default=0, help="顯示除錯訊息")
        common.add_argument("--quiet", "-q", action="store_true", help="不顯示進度訊息")

        parser = _Parser(prog="exit-moments", description="模型流形上的出口時間矩與有限性判準")
        commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

        warp = commands.add_parser("warp", parents=[common], help="求解翹曲函數並輸出 h")
        self._profile_arguments(warp)
        warp.add_argument("--t-max", type=float, required=True, help="積分區間右端點")

        met = commands.add_parser("met", parents=[common], help="平均出口時間剖面")
        self._ball_arguments(met)
        met.add_argument("--at", type=parse_float_list, default=None, help="查詢點（逗號分隔）")

        moments = commands.add_parser("moments", parents=[common], help="出口時間矩表格")
        self._ball_arguments(moments)
        moments.add_argument("--K", type=int, required=True, help="最高階數")
        moments.add_argument("--at", type=parse_float_list, default=None, help="查詢點（逗號分隔）")

        bound = commands.add_parser("bound", parents=[common], help="平均出口時間上界與 tower 上界")
        self._profile_arguments(bound)
        bound.add_argument("--m", type=int, required=True)
        bound.add_argument("--l", type=int, required=True)
        bound.add_argument("--eta", type=float, required=True)
        bound.add_argument("--r-d", type=float, required=True)
        bound.add_argument("--K", type=int, default=1, help="tower 上界的最高階數")

        barta = commands.add_parser("barta", parents=[common], help="球冠特徵值的 Barta 下界")
        self._cap_arguments(barta)
        barta.add_argument("--grid", type=int, default=None, help="格點數")
        barta.add_argument("--profile-out", default=None, help="輸出 Barta 商剖面 CSV")

        eigen = commands.add_parser("eigen", parents=[common], help="打靶法球冠特徵值")
        self._cap_arguments(eigen)
        eigen.add_argument("--tol", type=float, default=None)

        cone = commands.add_parser("cone", parents=[common], help="錐判準")
        cone.add_argument("--m", type=int, required=True)
        cone.add_argument("--theta", type=parse_angle, required=True, help="錐角，例如 pi/4、atan:sqrt2")
        cone.add_argument("--lambda1", type=float, default=None, help="截面第一特徵值（省略時以打靶法計算）")
        cone.add_argument("--l", type=int, default=None, help="錐的維度（預設 m）")

        wedge = commands.add_parser("wedge", parents=[common], help="楔形判準")
        wedge.add_argument("--m", type=int, required=True)
        wedge.add_argument("--n", type=int, default=2)
        wedge.add_argument("--l", type=int, required=True)
        wedge.add_argument("--k", type=int, required=True)
        wedge.add_argument("--alpha", type=float, required=True)

        warped = commands.add_parser("warped-cone", parents=[common], help="翹曲錐條件")
        warped.add_argument("--l", type=int, required=True)
        warped.add_argument("--lambda", dest="lam", type=float, required=True)
        warped.add_argument("--r0", type=float, required=True)
        warped.add_argument("--horizon", type=float, default=None)
        warped.add_argument("--alpha", type=float, default=None)
        warped.add_argument("--k", type=float, default=None)
        warped.add_argument("--warp", default=None, help="表格翹曲 JSON 檔（@path 或 path）")
        warped.add_argument("--grid", type=int, default=None)
        warped.add_argument("--c", type=float, default=None, help="輸出超解時使用的常數")
        warped.add_argument("--at", type=parse_float_list, default=None, help="超解查詢點")
        warped.add_argument("--profile-out", default=None, help="輸出 F(t) 剖面 CSV")

        criteria = commands.add_parser("criteria", parents=[common], help="批次判準報告")
        criteria.add_argument("--input", required=True, help="案例 JSON 陣列")

        simulate = commands.add_parser("simulate", parents=[common], help="蒙地卡羅出口時間")
        self._ball_arguments(simulate)
        simulate.add_argument("--start", type=float, default=0.0)
        simulate.add_argument("--paths", type=int, default=None)
        simulate.add_argument("--dt", type=float, default=None)
        simulate.add_argument("--seed", type=int, default=None)
        simulate.add_argument("--max-k", type=int, default=None)
        simulate.add_argument("--workers", type=int, default=None)
        simulate.add_argument("--block-size", type=int, default=None)
        simulate.add_argument("--no-bridge", action="store_true", help="關閉布朗橋邊界修正")
        simulate.add_argument("--exit-times", default=None, help="出口時間二進位輸出路徑")
        simulate.add_argument("--sweep", type=parse_float_list, default=None, help="收斂掃描的 dt 列表")
        simulate.add_argument("--at", type=parse_float_list, default=None, help="多個起點，輸出蒙地卡羅矩表格")

        verify = commands.add_parser("verify", parents=[common], help="執行驗收流程")
        verify.add_argument("--quick", action="store_true", help="快速模式")
        verify.add_argument("--stages", default=None, help="只執行指定階段（逗號分隔）")
        return parser

    @staticmethod
    def _profile_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--profile", required=True, help="constant:B、poly:c0,c1,... 或 @profile.json")
        parser.add_argument("--tol", type=float, default=None, help="翹曲函數容許誤差")

    def _ball_arguments(self, parser: argparse.ArgumentParser) -> None:
        self._profile_arguments(parser)
        parser.add_argument("--n", type=int, required=True, help="模型維度")
        parser.add_argument("--r", type=float, required=True, help="球半徑")
        parser.add_argument("--grid", type=int, default=None, help="徑向格點數")
        parser.add_argument("--richardson", action="store_true", help="Richardson 外推")

    @staticmethod
    def _cap_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--m", type=int, required=True, help="球冠位於 𝕊^{m−1}")
        parser.add_argument("--r", type=parse_angle, required=True, help="極半徑，例如 pi/3、atan:sqrt2")

    # ------------------------------------------------------------------
    # 執行
    # ------------------------------------------------------------------
    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        執行命令列

        Args:
            argv: 參數列表（預設 sys.argv[1:]）

        Returns:
            int: 退出碼
        """
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except UsageError as e:
            parser.print_usage(sys.stderr)
            print(f"❌ {e}", file=sys.stderr)
            return EXIT_USAGE
        except SystemExit as e:
            return int(e.code or 0)

        run_config = RunConfig(
            command=args.command,
            output=args.output,
            format=args.format or ("csv" if args.command in TABLE_COMMANDS else "json"),
            verbosity=0 if args.quiet else 1 + args.verbose,
            config_path=args.config,
        )
        self.reporter = ConsoleReporter(verbosity=run_config.verbosity)

        try:
            self.config = ConfigLoader(run_config.config_path)
            output = self.handlers[run_config.command](args)
            writer = ResultWriter(self.config.get("output", "float_digits"), self.reporter)
            if run_config.format == "json":
                writer.save_json(output.report, run_config.output)
            else:
                writer.save_table(output.table, run_config.output, output.header_lines)
        except ExitMomentsError as e:
            self.reporter.error(f"{type(e).__name__}: {e}")
            return EXIT_MODULE_ERROR

        return output.exit_code

    # ------------------------------------------------------------------
    # 共用建構
    # ------------------------------------------------------------------
    def _solve(self, args: argparse.Namespace, t_max: float):
        self.config.override("warping", "tol", args.tol)
        solver = WarpingSolver(self.config.get("warping", "grid_steps"), self.reporter)
        profile = CurvatureProfile.parse(args.profile)
        return solver.solve(profile, t_max, self.config.get("warping", "tol"))

    def _ball(self, args: argparse.Namespace) -> ModelBall:
        return ModelBall(args.n, self._solve(args, args.r), args.r)

    def _moment_solver(self, args: argparse.Namespace) -> MomentSolver:
        self.config.override("moments", "grid_size", args.grid)
        if args.richardson:
            self.config.override("moments", "richardson", True)
        return MomentSolver(self.config.get("moments", "grid_size"),
                            self.config.get("moments", "richardson"), self.reporter)

    @staticmethod
    def _ball_header(ball: ModelBall, method: str = QUADRATURE) -> List[str]:
        return [f"n={ball.n}, r={ball.r!r}, method={method}"]

    # ------------------------------------------------------------------
    # 子命令
    # ------------------------------------------------------------------
    def _warp(self, args: argparse.Namespace) -> CommandOutput:
        warping = self._solve(args, args.t_max)
        frame = warping.to_frame()
        report = {
            "profile": warping.profile.to_dict(),
            "t_max": warping.t_max,
            "closed_form": warping.closed_form_tag,
            "t_series": warping.t_series,
            "grid": {column: frame[column].to_numpy() for column in frame.columns},
        }
        return CommandOutput(report, frame, [f"profile={warping.profile.variant}, t_max={warping.t_max!r}"])

    def _met(self, args: argparse.Namespace) -> CommandOutput:
        ball = self._ball(args)
        table = self._moment_solver(args).moment_table(ball, 1)
        points = np.asarray(args.at if args.at is not None else table.grid, dtype=float)
        values = np.asarray(table.value_at(1, points))
        frame = pd.DataFrame({"t": points, "E": values})
        report = {"ball": ball.to_dict(), "t": points, "E": values}
        return CommandOutput(report, frame, self._ball_header(ball))

    def _moments(self, args: argparse.Namespace) -> CommandOutput:
        ball = self._ball(args)
        table = self._moment_solver(args).moment_table(ball, args.K)
        if args.at is None:
            frame = table.to_frame()
        else:
            points = np.asarray(args.at, dtype=float)
            columns = {"t": points}
            for k in range(table.K + 1):
                columns[f"u{k}"] = np.asarray(table.value_at(k, points))
            frame = pd.DataFrame(columns)
        report = {"ball": ball.to_dict(), "K": table.K, "method": table.method,
                  "rows": frame.to_dict(orient="records")}
        return CommandOutput(report, frame, table.header_lines())

    def _bound(self, args: argparse.Namespace) -> CommandOutput:
        spec = BoundSpec(args.m, args.l, args.eta, args.r_d, self._solve(args, args.r_d))
        grid_size = self.config.get("moments", "grid_size")
        bound = theorem1_bound(spec, grid_size)
        tower = [{"k": k, "bound": tower_bound(spec, k, grid_size)} for k in range(1, args.K + 1)]
        report = {"m": spec.m, "l": spec.ell, "eta": spec.eta, "r_D": spec.r_D,
                  "theorem1_bound": bound, "tower": tower}
        return CommandOutput(report, pd.DataFrame(tower, columns=["k", "bound"]))

    def _barta(self, args: argparse.Namespace) -> CommandOutput:
        self.config.override("spectral", "barta_grid", args.grid)
        barta = BartaBound(self.config.get("spectral", "barta_grid"),
                           self.config.get("spectral", "refine_tol"), reporter=self.reporter)
        cap = CapSpec(args.m, args.r)
        estimate = barta.lower_bound(cap)
        if args.profile_out:
            t, q = barta.profile(cap)
            ResultWriter(self.config.get("output", "float_digits"), self.reporter).save_table(
                pd.DataFrame({"t": t, "q": q}), args.profile_out, [f"m={cap.m}, r={cap.r!r}"])
        report = {**cap.to_dict(), **estimate.to_dict()}
        return CommandOutput(report, pd.DataFrame([report]))

    def _eigen(self, args: argparse.Namespace) -> CommandOutput:
        self.config.override("spectral", "shooting_tol", args.tol)
        cap = CapSpec(args.m, args.r)
        estimate = CapShooting(reporter=self.reporter).eigenvalue(cap, self.config.get("spectral", "shooting_tol"))
        report = {**cap.to_dict(), **estimate.to_dict()}
        return CommandOutput(report, pd.DataFrame([report]))

    def _cone(self, args: argparse.Namespace) -> CommandOutput:
        checker = CriteriaChecker(reporter=self.reporter)
        corollary = checker.check_cone(args.m, args.theta)
        ell = args.l if args.l is not None else args.m
        if args.lambda1 is not None:
            lambda1, source = args.lambda1, "input"
        else:
            cap = CapSpec(args.m, args.theta)
            lambda1 = CapShooting(reporter=self.reporter).eigenvalue(
                cap, self.config.get("spectral", "shooting_tol")).value
            source = "shooting"
        finite = cone_finite_met(lambda1, ell)
        report = {
            "corollary": corollary.to_dict(),
            "eigenvalue_criterion": {"lambda1": lambda1, "lambda1_source": source, "l": ell,
                                     "threshold": 2 * ell, "verdict": finite},
        }
        frame = pd.DataFrame([
            {"criterion_id": "cone", "verdict": corollary.verdict, "threshold": corollary.threshold},
            {"criterion_id": "cone_eigenvalue", "verdict": finite, "threshold": float(2 * ell)},
        ])
        return CommandOutput(report, frame)

    def _wedge(self, args: argparse.Namespace) -> CommandOutput:
        report = CriteriaChecker(reporter=self.reporter).check_wedge(
            WedgeCase(args.m, args.n, args.l, args.k, args.alpha))
        return CommandOutput(report.to_dict(), CriteriaChecker.summary_frame([report]))

    def _warp_profile(self, args: argparse.Namespace) -> WarpProfile:
        if args.warp is not None:
            return WarpProfile.load(args.warp.lstrip("@"))
        if args.alpha is None or args.k is None:
            raise InvalidInput("需要 --alpha 與 --k，或以 --warp 指定表格翹曲")
        return WarpProfile.linear(args.alpha, args.k)

    def _warped_cone(self, args: argparse.Namespace) -> CommandOutput:
        self.config.override("warped_cone", "horizon", args.horizon)
        self.config.override("warped_cone", "grid_size", args.grid)
        spec = WarpedConeSpec(args.l, self._warp_profile(args), args.lam, args.r0,
                              self.config.get("warped_cone", "horizon"))
        cone = WarpedCone(self.config.get("warped_cone", "grid_size"), self.reporter)
        result = cone.condition(spec)
        report = {"spec": {"l": spec.ell, "warp": spec.warp.to_dict(), "lambda": spec.lam,
                           "r0": spec.r0, "horizon": spec.horizon},
                  **result.to_dict()}

        if args.profile_out:
            t, F = cone.profile(spec)
            ResultWriter(self.config.get("output", "float_digits"), self.reporter).save_table(
                pd.DataFrame({"t": t, "F": F}), args.profile_out)
        if args.at is not None:
            c = args.c if args.c is not None else result.c_witness
            if c is None:
                raise InvalidInput("條件不可滿足，需以 --c 指定超解常數")
            report["supersolution"] = {"c": c, "t": args.at, "u": cone.supersolution(spec, c, np.asarray(args.at))}

        frame = pd.DataFrame([{key: value for key, value in result.to_dict().items() if key != "notes"}])
        return CommandOutput(report, frame)

    def _criteria(self, args: argparse.Namespace) -> CommandOutput:
        cases = ResultWriter.load_json(args.input)
        checker = CriteriaChecker(reporter=self.reporter)
        reports = checker.evaluate_batch(cases)
        return CommandOutput([report.to_dict() for report in reports], checker.summary_frame(reports))

    def _simulate(self, args: argparse.Namespace) -> CommandOutput:
        for key in ("paths", "dt", "seed", "max_k", "workers", "block_size"):
            self.config.override("simulation", key, getattr(args, key))
        settings = self.config.config["simulation"]
        ball = self._ball(args)
        config = SimConfig(ball, args.start, settings["paths"], settings["dt"], settings["seed"],
                           settings["max_k"], block_size=settings["block_size"], workers=settings["workers"],
                           bridge_correction=not args.no_bridge)
        simulator = RadialSimulator(self.reporter)

        if args.sweep is not None:
            frame = simulator.convergence_sweep(config, args.sweep)
            report = {"ball": ball.to_dict(), "seed": config.seed, "paths": config.paths,
                      "sweep": frame.to_dict(orient="records")}
            return CommandOutput(report, frame, self._ball_header(ball, MONTE_CARLO))

        if args.at is not None:
            table = simulator.moment_table(config, args.at)
            frame = table.to_frame()
            report = {"ball": ball.to_dict(), "method": table.method, "seed": config.seed,
                      "paths": config.paths, "table": frame.to_dict(orient="records")}
            return CommandOutput(report, frame, table.header_lines())

        result = simulator.simulate_exit(config, args.exit_times)
        report = {"ball": ball.to_dict(), "start_t": config.start_t, **result.to_dict()}
        frame = pd.DataFrame(result.moment_estimates, columns=["k", "mean", "standard_error"])
        return CommandOutput(report, frame, self._ball_header(ball, MONTE_CARLO))

    def _verify(self, args: argparse.Namespace) -> CommandOutput:
        suite = VerificationSuite(self.config, quick=args.quick, reporter=self.reporter)
        stages = [name.strip() for name in args.stages.split(",")] if args.stages else None
        table = suite.run(stages)
        summary = summarize(table)
        if summary["failed"]:
            self.reporter.error(f"驗收失敗: {summary['failed']} 項未通過")
            code = EXIT_VERIFY_FAILED
        else:
            self.reporter.done(f"驗收通過: {summary['passed']} 項")
            code = EXIT_OK
        report = {"summary": summary, "checks": table.to_dict(orient="records")}
        return CommandOutput(report, table, exit_code=code)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """命令列進入點"""
    return CommandRunner().run(argv)


def main() -> None:
    sys.exit(run(sys.argv[1:]))
