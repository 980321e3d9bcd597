"""planted_lab で使う例外クラス群。

各クラスは CLI の終了コードを ``exit_code`` として持つ。
"""
from typing import Optional


class PlantedLabError(Exception):
    """全てのドメイン例外の基底クラス"""
    exit_code = 1


class ConfigError(PlantedLabError):
    """設定キーの欠落・過剰・型不一致"""
    exit_code = 2

    def __init__(self, key: Optional[str], message: str):
        self.key = key
        self.message = message
        super().__init__(f"{key}: {message}" if key else message)


class SpecError(ConfigError, ValueError):
    """モデル仕様が不変条件を満たさない、またはファミリーと操作が合わない"""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(key, message)


class AlphaOutOfRange(PlantedLabError, ValueError):
    exit_code = 2


class BoundaryGamma(PlantedLabError, ValueError):
    """漸近式が定義されない境界 gamma (1 と 2)"""
    exit_code = 2

    def __init__(self, gamma: float):
        self.gamma = gamma
        super().__init__(f"asymptotics undefined at gamma={gamma}")


class DegenerateSize(PlantedLabError):
    exit_code = 3


class DegenerateCoverage(PlantedLabError):
    exit_code = 3


class EmptySupport(PlantedLabError, ValueError):
    exit_code = 3


class BudgetError(PlantedLabError):
    """列挙候補数が予算を超えた"""
    exit_code = 3

    def __init__(self, count: int, budget: int, trial_index: Optional[int] = None):
        self.count = count
        self.budget = budget
        self.trial_index = trial_index
        message = f"C(N,k)={count} exceeds enumeration budget {budget}"
        if trial_index is not None:
            message += f" (trial {trial_index})"
        super().__init__(message)


class NoCrossing(PlantedLabError):
    exit_code = 1


class ExponentLowerBoundOnly(PlantedLabError):
    """失敗が一度も観測されず、指数の下界しか得られない"""
    exit_code = 1

    def __init__(self, bound: float):
        self.bound = bound
        super().__init__(f"no failures observed; exponent >= {bound:.4f}")


class IoError(PlantedLabError, OSError):
    exit_code = 4
