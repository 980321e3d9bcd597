import math
from itertools import combinations
from typing import Iterator, Tuple

import numpy as np

from planted_lab.estimators.estimate import (
    DEFAULT_ENUMERATION_BUDGET, Estimate, Method, comparison_tolerance, prefer, require_graph,
)
from planted_lab.models import Instance, solution_weight
from planted_lab.utils.errors import BudgetError


# 丸め誤差の蓄積を抑えるため、この回数ごとに現在解の重みを再計算する
RESYNC_INTERVAL = 1024


def revolving_door(n: int, k: int, reverse: bool = False) -> Iterator[Tuple[int, ...]]:
    """
    {0..n-1} の k 部分集合を、隣同士が1要素の入れ替えだけで異なる順（回転扉順）に列挙する

    Γ(n,k) = Γ(n-1,k) の後に reverse(Γ(n-1,k-1)) の各集合へ n-1 を加えたもの。
    """
    if k == 0:
        yield ()
        return
    if k == n:
        yield tuple(range(n))
        return
    if not reverse:
        yield from revolving_door(n - 1, k, False)
        for subset in revolving_door(n - 1, k - 1, True):
            yield subset + (n - 1,)
    else:
        for subset in revolving_door(n - 1, k - 1, False):
            yield subset + (n - 1,)
        yield from revolving_door(n - 1, k, True)


class IncidentWeights:
    """ノード v と (h-1) ノード集合 R から成るハイパーエッジの重み和を計算する"""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.h = instance.spec.h
        self.codec = instance.codec
        if self.h == 2:
            n = instance.spec.size
            pairs = self.codec.all_subsets()
            self.adjacency = np.zeros((n, n))
            self.adjacency[pairs[:, 0], pairs[:, 1]] = instance.weights
            self.adjacency[pairs[:, 1], pairs[:, 0]] = instance.weights

    def __call__(self, v: int, rest: Tuple[int, ...]) -> float:
        if self.h == 2:
            return float(self.adjacency[v, list(rest)].sum())
        if len(rest) < self.h - 1:
            return 0.0
        others = np.array(list(combinations(rest, self.h - 1)), dtype=np.int64)
        rows = np.sort(np.column_stack([others, np.full(len(others), v)]), axis=1)
        return float(self.instance.weights[self.codec.rank_many(rows)].sum())


def ml_densest_exhaustive(instance: Instance, enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET) -> Estimate:
    """
    最密 k 部分(ハイパー)グラフを全列挙で求める

    回転扉順で隣接する部分集合に移るとき、入れ替わった2ノードに接するハイパーエッジだけを
    足し引きして重みを更新する。最良候補との差が許容幅以内なら厳密に再計算し、
    同値なら辞書順で小さい方を採る。

    Args:
        instance (Instance): WSBM / HWSBM インスタンス
        enumeration_budget (int): 列挙する候補数の上限

    Returns:
        Estimate: 大域最適解

    Raises:
        BudgetError: C(N,k) が予算を超える場合
    """
    require_graph(instance)
    n, k = instance.spec.size, instance.spec.k
    count = math.comb(n, k)
    if count > enumeration_budget:
        raise BudgetError(count, enumeration_budget)

    incident = IncidentWeights(instance)
    tolerance = comparison_tolerance(instance)

    doors = revolving_door(n, k)
    current = next(doors)
    current_weight = solution_weight(instance, current)
    best_subset, best_weight = current, current_weight
    explored = 1

    for candidate in doors:
        removed = (set(current) - set(candidate)).pop()
        added = (set(candidate) - set(current)).pop()
        common = tuple(v for v in current if v != removed)
        current_weight += incident(added, common) - incident(removed, common)
        current = candidate
        explored += 1
        if explored % RESYNC_INTERVAL == 0:
            current_weight = solution_weight(instance, current)

        if current_weight > best_weight + tolerance:
            best_subset, best_weight = current, solution_weight(instance, current)
        elif current_weight >= best_weight - tolerance:
            exact = solution_weight(instance, current)
            if prefer(exact, current, best_weight, best_subset, tolerance):
                best_subset, best_weight = current, exact

    return Estimate(subset=best_subset, weight=best_weight, explored=explored, method=Method.EXHAUSTIVE)
