"""
Value Parser
數值解析器

解析命令列中的角度與數值寫法：0.5、pi/3、2pi/3、sqrt2、atan:2、atan:sqrt2
"""

import math
import re
from typing import List

from .errors import InvalidInput

_PI_PATTERN = re.compile(r"^(?:(?P<num>[0-9]*\.?[0-9]+)\s*\*?\s*)?pi(?:\s*/\s*(?P<den>[0-9]*\.?[0-9]+))?$")
_SQRT_PATTERN = re.compile(r"^sqrt\(?(?P<arg>[0-9]*\.?[0-9]+)\)?$")


def parse_scalar(text: str) -> float:
    """解析實數（支援 pi 倍數與 sqrt）"""
    token = text.strip().lower()
    match = _PI_PATTERN.match(token)
    if match:
        numerator = float(match.group("num")) if match.group("num") else 1.0
        denominator = float(match.group("den")) if match.group("den") else 1.0
        if denominator == 0.0:
            raise InvalidInput(f"無效的數值: {text}")
        return numerator * math.pi / denominator

    match = _SQRT_PATTERN.match(token)
    if match:
        return math.sqrt(float(match.group("arg")))

    try:
        return float(token)
    except ValueError as e:
        raise InvalidInput(f"無效的數值: {text}") from e


def parse_angle(text: str) -> float:
    """
    解析角度（弧度）

    Args:
        text: 例如 "pi/3"、"0.9553"、"atan:sqrt2"

    Returns:
        float: 弧度
    """
    token = text.strip().lower()
    if token.startswith("atan:"):
        return math.atan(parse_scalar(token[len("atan:"):]))
    return parse_scalar(token)


def parse_float_list(text: str) -> List[float]:
    """解析逗號分隔的數值列表"""
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        raise InvalidInput(f"空的數值列表: {text!r}")
    return [parse_scalar(item) for item in items]
