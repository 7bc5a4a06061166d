"""
核心模組
Core Module

驗收流程管理
Verification pipeline
"""

from .verification_suite import VerificationSuite, summarize

__all__ = ["VerificationSuite", "summarize"]
