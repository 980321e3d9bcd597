import math
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import stats

from planted_lab.thresholds import failure_exponent
from planted_lab.utils.errors import ExponentLowerBoundOnly, SpecError


MIN_SIZES = 3


class FailureCell(BaseModel):
    """
    1つのサイズでの失敗率

    失敗が観測されない場合 rate は 3/T（rule of three）で is_bound = True。
    """
    model_config = ConfigDict(frozen=True)

    size: int
    failures: int
    trials: int
    rate: float
    is_bound: bool = False

    @classmethod
    def from_counts(cls, size: int, successes: int, trials: int) -> 'FailureCell':
        failures = trials - successes
        if failures == 0:
            return cls(size=size, failures=0, trials=trials, rate=min(1.0, 3.0 / trials), is_bound=True)
        return cls(size=size, failures=failures, trials=trials, rate=failures / trials)


class ExponentFit(BaseModel):
    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    expected: Optional[float] = None
    sizes: List[int]
    bounded_cells: int = 0


def expected_exponent(gamma: float) -> float:
    """gamma > 1 での予測指数（(gamma-1)^2 または gamma^2/2 - 1）"""
    if not gamma > 1.0:
        raise SpecError(f"gamma={gamma} must exceed 1 for a failure exponent", key="gamma")
    return failure_exponent(gamma)


def exponent_fit(cells: Sequence[FailureCell], gamma: Optional[float] = None) -> ExponentFit:
    """
    -ln(失敗率) を ln M に最小二乗でフィットした傾きを返す

    失敗のないセルは 3/T を失敗率として使う。

    Args:
        cells: 3つ以上のサイズの失敗率
        gamma (float): 指定すると予測指数を併記する

    Returns:
        ExponentFit: 傾き・切片・予測指数

    Raises:
        ExponentLowerBoundOnly: 全てのセルで失敗が観測されなかった場合
    """
    if len({cell.size for cell in cells}) < MIN_SIZES:
        raise SpecError(f"exponent fit needs at least {MIN_SIZES} distinct sizes", key="sizes")
    if any(cell.size < 2 for cell in cells):
        raise SpecError("sizes must be at least 2", key="sizes")
    expected = expected_exponent(gamma) if gamma is not None else None

    if all(cell.is_bound for cell in cells):
        bound = max(math.log(cell.trials / 3.0) / math.log(cell.size) for cell in cells)
        raise ExponentLowerBoundOnly(bound)

    x = np.log([cell.size for cell in cells])
    y = -np.log([cell.rate for cell in cells])
    result = stats.linregress(x, y)
    return ExponentFit(slope=float(result.slope), intercept=float(result.intercept), expected=expected,
                       sizes=[cell.size for cell in cells],
                       bounded_cells=sum(1 for cell in cells if cell.is_bound))
