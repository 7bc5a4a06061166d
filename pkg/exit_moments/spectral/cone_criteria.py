"""
Cone Criteria
錐的有限平均出口時間判準

C_Ω 有有限平均出口時間 ⇔ λ₁(Ω) > 2ℓ。
球冠半徑 arctan√(m−1) 上 λ₁ = 2m，兩個判準在此處交會。
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

from ..utils.errors import InvalidInput
from .barta_bound import BartaBound
from .cap_shooting import CapShooting
from .cap_spec import CapSpec


def cone_finite_met(lambda1: float, ell: int) -> bool:
    """λ₁ > 2ℓ"""
    if not lambda1 > 0.0:
        raise InvalidInput(f"λ₁ 必須為正: {lambda1}")
    if ell < 2:
        raise InvalidInput(f"錐的維度 ℓ 必須 ≥ 2: ℓ={ell}")
    return lambda1 > 2.0 * ell


def critical_cap_radius(m: int) -> float:
    """arctan √(m−1)"""
    if m < 2:
        raise InvalidInput(f"m 必須 ≥ 2: m={m}")
    return math.atan(math.sqrt(m - 1))


def compare_cone_criteria(m: int, barta: Optional[BartaBound] = None,
                          shooting: Optional[CapShooting] = None) -> Dict[str, Any]:
    """
    比較半徑 arctan√(m−1) 的球冠上 Barta 下界、打靶法特徵值與 2m

    Args:
        m: 球冠參數（球冠位於 𝕊^{m−1}）
        barta: Barta 計算器
        shooting: 打靶法計算器

    Returns:
        Dict: 比較紀錄
    """
    barta = barta or BartaBound()
    shooting = shooting or CapShooting()
    cap = CapSpec(m, critical_cap_radius(m))
    lower = barta.lower_bound(cap).value
    estimate = shooting.eigenvalue(cap)
    exact = estimate.value
    return {
        "m": m,
        "r": cap.r,
        "barta": lower,
        "shooting": exact,
        "two_m": 2 * m,
        "barta_exceeds": cone_finite_met(lower, m),
        # 此半徑上 λ₁ = 2m，只有超出容差才算大於
        "shooting_exceeds": cone_finite_met(exact - estimate.tolerance, m),
    }


def barta_grid(ms: Sequence[int], radii: Sequence[float], barta: Optional[BartaBound] = None,
               shooting: Optional[CapShooting] = None, workers: Optional[int] = None) -> List[Dict[str, Any]]:
    """
    平行計算多個球冠的 Barta 下界與打靶法特徵值，結果依 (m, r) 排序

    Args:
        ms: m 值
        radii: 半徑
        barta: Barta 計算器
        shooting: 打靶法計算器
        workers: 執行緒數

    Returns:
        List[Dict]: 每個球冠一筆 {m, r, barta, shooting}
    """
    barta = barta or BartaBound()
    shooting = shooting or CapShooting()
    caps = [CapSpec(m, r) for m in sorted(set(ms)) for r in sorted(set(radii))]

    def evaluate(cap: CapSpec) -> Dict[str, Any]:
        return {
            "m": cap.m,
            "r": cap.r,
            "barta": barta.lower_bound(cap).value,
            "shooting": shooting.eigenvalue(cap).value,
        }

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, caps))
