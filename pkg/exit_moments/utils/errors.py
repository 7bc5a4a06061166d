"""
Error Types
錯誤類型

所有數值模組共用的例外階層。值域類錯誤同時繼承 ValueError，
演算法失敗則繼承 RuntimeError，呼叫端可依需要擇一捕捉。
"""

from typing import Any, Dict, Optional


class ExitMomentsError(Exception):
    """所有模組錯誤的基底類別"""


class InvalidInput(ExitMomentsError, ValueError):
    """參數或輸入文件格式錯誤"""


class InvalidProfile(ExitMomentsError, ValueError):
    """曲率剖面無效（負值、節點非遞增或未覆蓋工作區間）"""


class NonPositiveH(ExitMomentsError, RuntimeError):
    """翹曲函數在 t > 0 處出現非正值"""


class OutOfRange(ExitMomentsError, ValueError):
    """查詢點超出可用區間"""


class SingularAtZero(ExitMomentsError, ValueError):
    """在 t = 0 查詢奇異量"""


class NegativeOrder(ExitMomentsError, ValueError):
    """矩的階數為負"""


class EtaNonPositive(ExitMomentsError, ValueError):
    """η 必須為正"""


class DegenerateCap(ExitMomentsError, ValueError):
    """球冠半徑超過 π/2"""


class QuadratureUnderflow(ExitMomentsError, RuntimeError):
    """積分權重下溢"""


class BracketFailure(ExitMomentsError, RuntimeError):
    """打靶法無法夾出特徵值"""


class HorizonTooSmall(ExitMomentsError, RuntimeError):
    """積分視界不足以判定尾部行為"""

    def __init__(self, message: str, partial: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.partial = partial or {}


class InvalidC(ExitMomentsError, ValueError):
    """超解常數 c 必須大於 1/λ"""


class NonPositiveB(ExitMomentsError, ValueError):
    """曲率下界 b 必須為正"""


class DegenerateCone(ExitMomentsError, ValueError):
    """錐角必須小於 π/2"""


class StepTooLarge(ExitMomentsError, ValueError):
    """時間步長相對於球半徑過大"""
