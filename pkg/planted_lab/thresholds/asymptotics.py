import math
from typing import NamedTuple

import numpy as np
from scipy import integrate, special

from planted_lab.utils.errors import BoundaryGamma, SpecError


class SuccessPrediction(NamedTuple):
    success: float
    exponent: float


def failure_exponent(gamma: float) -> float:
    """
    失敗確率の指数 e（P[fail] ~ M^{-e}）

    gamma < 1 では 0、1 < gamma < 2 では (gamma-1)^2、gamma > 2 では gamma^2/2 - 1。

    Raises:
        BoundaryGamma: gamma が 1 または 2 の場合
    """
    if math.isclose(gamma, 1.0, rel_tol=0.0, abs_tol=1e-12) or math.isclose(gamma, 2.0, rel_tol=0.0, abs_tol=1e-12):
        raise BoundaryGamma(gamma)
    if gamma < 1.0:
        return 0.0
    if gamma < 2.0:
        return (gamma - 1.0) ** 2
    return gamma ** 2 / 2.0 - 1.0


def asymptotic_success(gamma: float, M: int) -> SuccessPrediction:
    """
    1-P-REM の最尤推定の成功確率の主要項（o(1) 補正は無視）

    Args:
        gamma (float): SNR（> 0）
        M (int): 非バイアス状態数（>= 2）

    Returns:
        SuccessPrediction: (成功確率, 失敗指数)
    """
    if not gamma > 0:
        raise SpecError(f"gamma={gamma} must be positive", key="gamma")
    if M < 2:
        raise SpecError(f"M={M} must be at least 2", key="M")
    exponent = failure_exponent(gamma)
    if gamma < 1.0:
        return SuccessPrediction(0.0, 0.0)
    return SuccessPrediction(1.0 - float(M) ** (-exponent), exponent)


def exact_success_probability(gamma: float, M: int, k: int = 1) -> float:
    """
    有限 M での上位 k 復号の成功確率を数値積分で求める

    標準化すると非バイアス状態は N(0,1)、バイアス状態は N(delta,1)、
    delta = mu/sigma = gamma sqrt(2 ln M)。成功は「バイアス状態の最小値 > 非バイアス状態の最大値」:
        P = ∫ M φ(y) Φ(y)^{M-1} (1 - Φ(y - delta))^k dy

    Args:
        gamma (float): SNR（>= 0）
        M (int): 非バイアス状態数（>= 2）
        k (int): バイアス状態数

    Returns:
        float: 成功確率
    """
    if gamma < 0:
        raise SpecError(f"gamma={gamma} must be non-negative", key="gamma")
    if M < 2 or k < 1:
        raise SpecError(f"need M >= 2 and k >= 1 (M={M}, k={k})")
    delta = gamma * math.sqrt(2.0 * math.log(M))

    def integrand(y: float) -> float:
        log_density = (math.log(M) - 0.5 * y * y - 0.5 * math.log(2.0 * math.pi)
                       + (M - 1) * special.log_ndtr(y)
                       + k * special.log_ndtr(delta - y))
        return math.exp(log_density)

    # 非バイアス最大値の分布は sqrt(2 ln M) 付近に集中する
    peak = math.sqrt(2.0 * math.log(M))
    lower, upper = min(-8.0, delta - 8.0), max(peak, delta) + 8.0
    breakpoints = sorted({peak, delta, min(peak, delta) - 1.0})
    breakpoints = [p for p in breakpoints if lower < p < upper]
    value, _ = integrate.quad(integrand, lower, upper, points=breakpoints or None, limit=200)
    return float(np.clip(value, 0.0, 1.0))
