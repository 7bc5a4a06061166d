"""
翹曲函數模組
Warping Module

求解旋轉對稱模型的翹曲方程 h'' = G h
Solves the warping equation of rotationally symmetric models
"""

from .curvature_profile import CurvatureProfile
from .warping_function import WarpingFunction
from .warping_solver import WarpingSolver, runge_kutta4, solve_warping

__all__ = ["CurvatureProfile", "WarpingFunction", "WarpingSolver", "runge_kutta4", "solve_warping"]
