"""
Exit Moments
出口時間矩

旋轉對稱模型流形上布朗運動出口時間矩的數值計算，
以及子流形有限平均出口時間與非浸入性判準
"""

# 核心模組
from .core.verification_suite import VerificationSuite

# 各功能模組
from .warping import CurvatureProfile, WarpingFunction, WarpingSolver
from .moments import BoundSpec, ModelBall, MomentSolver, MomentTable, theorem1_bound, tower_bound
from .spectral import BartaBound, CapShooting, CapSpec, WarpedCone, WarpedConeSpec, WarpProfile
from .criteria import CriteriaChecker, CriterionReport, CylinderCase, WedgeCase
from .simulation import RadialSimulator, SimConfig, SimResult
from .utils import ConfigLoader, ConsoleReporter, ResultWriter

__version__ = "1.0.0"

__all__ = [
    "VerificationSuite",
    "CurvatureProfile",
    "WarpingFunction",
    "WarpingSolver",
    "BoundSpec",
    "ModelBall",
    "MomentSolver",
    "MomentTable",
    "theorem1_bound",
    "tower_bound",
    "BartaBound",
    "CapShooting",
    "CapSpec",
    "WarpedCone",
    "WarpedConeSpec",
    "WarpProfile",
    "CriteriaChecker",
    "CriterionReport",
    "CylinderCase",
    "WedgeCase",
    "RadialSimulator",
    "SimConfig",
    "SimResult",
    "ConfigLoader",
    "ConsoleReporter",
    "ResultWriter",
]
