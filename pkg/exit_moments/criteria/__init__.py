"""
判準模組
Criteria Module

非浸入性與有限平均出口時間判準
Non-immersibility and finite mean exit time criteria
"""

from .cases import CriterionReport, CylinderCase, WedgeCase
from .criteria_checker import CriteriaChecker

__all__ = ["CriteriaChecker", "CriterionReport", "CylinderCase", "WedgeCase"]
