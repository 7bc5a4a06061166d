"""
Moment Bounds
出口時間上界

sup E_D ≤ ∫_0^{r_D} h^{-β}(τ) ∫_0^τ h^β(s) ds dτ,  β = η − 1
u^k_D ≤ k! (上式)^k
"""

import math

import numpy as np

from ..utils.errors import NegativeOrder
from .model_ball import BoundSpec
from .radial_quadrature import RadialQuadrature


def theorem1_bound(spec: BoundSpec, grid_size: int = 4096) -> float:
    """平均出口時間上界"""
    quadrature = RadialQuadrature.for_warping(spec.warping, spec.r_D, grid_size)
    return float(quadrature.tail_integral(spec.beta, np.ones_like(quadrature.grid))[0])


def tower_bound(spec: BoundSpec, k: int, grid_size: int = 4096) -> float:
    """k 階矩上界 k!·(theorem1_bound)^k"""
    if k < 1:
        raise NegativeOrder(f"tower 上界需要 k ≥ 1: k={k}")
    return math.factorial(k) * theorem1_bound(spec, grid_size) ** k
