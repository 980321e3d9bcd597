"""ガウス最大値の Gumbel 極限（Fisher-Tippett-Gnedenko）の経験的確認。"""
import math
from typing import NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import stats

from planted_lab.models import Purpose, stream
from planted_lab.utils.errors import SpecError


MIN_TRIALS = 100
# 95% での KS 臨界値の係数
KS_CRITICAL_95 = 1.36
DIRECT_CHUNK = 1 << 22


class Normalization(NamedTuple):
    a_n: float
    b_n: float


class FtgReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    trials: int
    a_n: float
    b_n: float
    ks_distance: float
    p_value: float
    critical_value: float


class KsSelfTest(BaseModel):
    model_config = ConfigDict(frozen=True)

    trials: int
    ks_distance: float
    p_value: float
    critical_value: float

    @property
    def passed(self) -> bool:
        return self.ks_distance < self.critical_value


def normalizing_constants(n: int) -> Normalization:
    """
    a_n = (2 ln n)^{-1/2}, b_n = (2 ln n)^{1/2} - (1/2)(2 ln n)^{-1/2}(ln ln n + ln 4pi)

    Raises:
        SpecError: n < 3（ln ln n が定義されない）の場合
    """
    if n < 3:
        raise SpecError(f"n={n} must be at least 3", key="n")
    two_log = 2.0 * math.log(n)
    a_n = two_log ** -0.5
    b_n = math.sqrt(two_log) - 0.5 * a_n * (math.log(math.log(n)) + math.log(4.0 * math.pi))
    return Normalization(a_n, b_n)


def sample_gaussian_maxima(n: int, trials: int, rng: np.random.Generator, exact: bool = True) -> np.ndarray:
    """
    標準正規分布 n 個の最大値を trials 個引く

    exact=True では Phi^n の逆関数で直接引く。1 - U^{1/n} を -expm1(ln U / n) で計算して
    上側の裾の精度を保つ。exact=False は n 個を実際に引いて最大を取る（小さな n 用）。
    """
    if exact:
        tiny = np.finfo(np.float64).tiny
        uniforms = np.clip(rng.random(trials), tiny, np.nextafter(1.0, 0.0))
        return stats.norm.isf(-np.expm1(np.log(uniforms) / n))

    maxima = np.empty(trials)
    rows = max(1, DIRECT_CHUNK // n)
    for start in range(0, trials, rows):
        stop = min(trials, start + rows)
        maxima[start:stop] = rng.standard_normal((stop - start, n)).max(axis=1)
    return maxima


def ftg_check(n: int, trials: int, seed: int, exact: Optional[bool] = None) -> FtgReport:
    """
    正規化した最大値 (M_n - b_n) / a_n と Gumbel 分布 exp(-e^{-x}) の KS 距離を求める

    Args:
        n (int): 1回の最大値に使う標本数（>= 3）
        trials (int): 最大値の数（>= 100）
        seed (int): シード
        exact (bool): None の場合は n が大きいときだけ逆関数法を使う

    Returns:
        FtgReport: 正規化定数と KS 距離
    """
    a_n, b_n = normalizing_constants(n)
    if trials < MIN_TRIALS:
        raise SpecError(f"trials={trials} must be at least {MIN_TRIALS}", key="trials")
    if exact is None:
        exact = n > 1000
    rng = stream(seed, Purpose.FTG, n)
    normalized = (sample_gaussian_maxima(n, trials, rng, exact=exact) - b_n) / a_n
    result = stats.kstest(normalized, stats.gumbel_r.cdf)
    return FtgReport(n=n, trials=trials, a_n=a_n, b_n=b_n, ks_distance=float(result.statistic),
                     p_value=float(result.pvalue), critical_value=KS_CRITICAL_95 / math.sqrt(trials))


def ks_self_test(trials: int, seed: int) -> KsSelfTest:
    """Gumbel 分布から直接引いた標本で KS 計算自体を確認する"""
    if trials < MIN_TRIALS:
        raise SpecError(f"trials={trials} must be at least {MIN_TRIALS}", key="trials")
    rng = stream(seed, Purpose.FTG, 0)
    samples = stats.gumbel_r.rvs(size=trials, random_state=rng)
    result = stats.kstest(samples, stats.gumbel_r.cdf)
    return KsSelfTest(trials=trials, ks_distance=float(result.statistic), p_value=float(result.pvalue),
                      critical_value=KS_CRITICAL_95 / math.sqrt(trials))
