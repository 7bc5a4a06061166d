"""
出口時間矩模組
Moments Module

模型球上的出口時間矩、平均出口時間上界與 tower 上界
Exit-time moments on model balls and their upper bounds
"""

from .bounds import theorem1_bound, tower_bound
from .model_ball import BoundSpec, ModelBall
from .moment_solver import MomentSolver
from .moment_table import MomentTable
from .radial_quadrature import RadialQuadrature
from .reference_oracle import reference_exit_moment

__all__ = [
    "BoundSpec",
    "ModelBall",
    "MomentSolver",
    "MomentTable",
    "RadialQuadrature",
    "reference_exit_moment",
    "theorem1_bound",
    "tower_bound",
]
