"""
蒙地卡羅模擬模組
Simulation Module

以徑向布朗運動模擬驗證出口時間矩
Monte Carlo cross-check of exit-time moments via radial Brownian motion
"""

from .radial_simulator import RadialSimulator
from .sim_config import SimConfig, SimResult

__all__ = ["RadialSimulator", "SimConfig", "SimResult"]
