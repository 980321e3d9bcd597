import math
from typing import List, NamedTuple, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict
from scipy import stats

from planted_lab.utils.errors import NoCrossing


CURVE_COLUMNS = ["gamma", "successes", "trials", "phat", "lo", "hi"]


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """
    二項比率の Wilson スコア区間

    Args:
        successes (int): 成功数
        trials (int): 試行数（>= 1）
        confidence (float): 信頼水準

    Returns:
        Tuple[float, float]: (下限, 上限)
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    z = stats.norm.ppf(0.5 + confidence / 2.0)
    phat = successes / trials
    denominator = 1.0 + z * z / trials
    center = (phat + z * z / (2.0 * trials)) / denominator
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4.0 * trials * trials)) / denominator
    return max(0.0, min(center - half, phat)), min(1.0, max(center + half, phat))


class CurveRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma: float
    successes: int
    trials: int
    phat: float
    lo: float
    hi: float

    @classmethod
    def from_counts(cls, gamma: float, successes: int, trials: int) -> 'CurveRow':
        lo, hi = wilson_interval(successes, trials)
        return cls(gamma=gamma, successes=successes, trials=trials, phat=successes / trials, lo=lo, hi=hi)


class RecoveryCurve(BaseModel):
    """
    SNR グリッド上の復元率の曲線

    Attributes:
        rows: gamma 昇順の行
        config_hash: 生成した設定のハッシュ
        seed: マスターシード
    """
    model_config = ConfigDict(frozen=True)

    rows: List[CurveRow]
    config_hash: str = ""
    seed: int = 0

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump() for row in self.rows], columns=CURVE_COLUMNS)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, config_hash: str = "", seed: int = 0) -> 'RecoveryCurve':
        rows = [CurveRow(gamma=float(r.gamma), successes=int(r.successes), trials=int(r.trials),
                         phat=float(r.phat), lo=float(r.lo), hi=float(r.hi))
                for r in frame.itertuples(index=False)]
        return cls(rows=rows, config_hash=config_hash, seed=seed)


class ThresholdCrossing(NamedTuple):
    gamma: float
    lower: float
    upper: float


def estimate_threshold(curve: RecoveryCurve, level: float = 0.5) -> ThresholdCrossing:
    """
    phat が level を横切る gamma を隣接グリッド点の線形補間で求める

    Returns:
        ThresholdCrossing: (補間した gamma, 挟む下側の gamma, 上側の gamma)

    Raises:
        NoCrossing: level を挟む隣接点がない場合
    """
    rows = curve.rows
    for left, right in zip(rows, rows[1:]):
        if left.phat == level:
            return ThresholdCrossing(left.gamma, left.gamma, right.gamma)
        if (left.phat - level) * (right.phat - level) < 0 or right.phat == level:
            fraction = (level - left.phat) / (right.phat - left.phat)
            return ThresholdCrossing(left.gamma + fraction * (right.gamma - left.gamma), left.gamma, right.gamma)
    raise NoCrossing(f"phat never crosses {level} on the grid")
