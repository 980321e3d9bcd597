from dataclasses import dataclass
from math import comb
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from planted_lab.models import Family, Instance
from planted_lab.utils.errors import SpecError


DEFAULT_ENUMERATION_BUDGET = 10 ** 8


class Method(str, Enum):
    """復元アルゴリズムの種別"""
    TOP_K = "topk"
    EXHAUSTIVE = "exhaustive"
    BRANCH_AND_BOUND = "bnb"
    ORACLE = "oracle"


@dataclass(frozen=True)
class Estimate:
    """
    推定結果

    Attributes:
        subset: 推定した k 部分集合（昇順）
        weight: solution_weight(instance, subset) の値
        explored: 評価した候補数
        method: 使用したアルゴリズム
    """
    subset: Tuple[int, ...]
    weight: float
    explored: int
    method: Method

    def recovers(self, instance: Instance) -> bool:
        """厳密復元（推定集合 = planted 集合）かどうか"""
        return self.subset == instance.planted


def prefer(weight: float, subset: Tuple[int, ...],
           best_weight: float, best_subset: Optional[Tuple[int, ...]],
           tolerance: float = 0.0) -> bool:
    """
    候補が現在の最良解より優れているか

    重みが大きい方を選び、差が tolerance 以内なら同値とみなして辞書順で小さい部分集合を選ぶ
    （全ソルバー共通の規則）。浮動小数の和は足す順で1ulp程度ずれるので、
    ソルバーは comparison_tolerance(instance) を渡す。
    """
    if best_subset is None:
        return True
    if abs(weight - best_weight) <= tolerance:
        return subset < best_subset
    return weight > best_weight


def comparison_tolerance(instance: Instance) -> float:
    """増分更新の丸め誤差を吸収する許容幅。これ以内の差は厳密再計算で判定する"""
    spec = instance.spec
    scale = float(np.max(np.abs(instance.weights))) if instance.weights.size else 0.0
    terms = comb(spec.k, spec.h) if spec.is_graph else spec.k
    return 1e-9 * max(1.0, scale * terms)


def require_graph(instance: Instance):
    if instance.spec.family not in (Family.WSBM, Family.HWSBM):
        raise SpecError(f"densest k-subgraph needs WSBM or HWSBM, got {instance.spec.family.value}",
                        key="family")
