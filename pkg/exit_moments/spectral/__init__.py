"""
譜方法模組
Spectral Module

球冠第一 Dirichlet 特徵值的 Barta 下界與打靶法、錐判準與翹曲錐條件
Barta lower bounds, shooting eigenvalues, cone criteria and the warped-cone condition
"""

from .barta_bound import BartaBound, barta_lower_bound
from .cap_shooting import CapShooting, cap_eigenvalue_shooting
from .cap_spec import CapSpec, CosineTrial, EigenEstimate
from .cone_criteria import barta_grid, compare_cone_criteria, cone_finite_met, critical_cap_radius
from .warped_cone import WarpedCone, WarpedConeResult, WarpedConeSpec, WarpProfile

__all__ = [
    "BartaBound",
    "CapShooting",
    "CapSpec",
    "CosineTrial",
    "EigenEstimate",
    "WarpProfile",
    "WarpedCone",
    "WarpedConeResult",
    "WarpedConeSpec",
    "barta_grid",
    "barta_lower_bound",
    "cap_eigenvalue_shooting",
    "compare_cone_criteria",
    "cone_finite_met",
    "critical_cap_radius",
]
