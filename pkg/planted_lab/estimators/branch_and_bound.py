from typing import List, Optional, Tuple

import numpy as np

from planted_lab.estimators.estimate import Estimate, Method, comparison_tolerance, prefer, require_graph
from planted_lab.models import Instance, solution_weight
from planted_lab.utils.logger import get_logger


class BranchAndBound:
    """
    最密 k 部分(ハイパー)グラフの厳密分枝限定法

    ノードは接続重みの総和の降順（同値はインデックス順）に並べ、その順に
    「次に採るノード」を選んで深さ優先で探索する。部分解 P と残り候補 R に対し、
    上界 W(P) + (R の各ノードの寄与の上位 (k-|P|) 個の和) が現在の最良解に
    届かない枝を刈る。寄与は P∪R に収まるハイパーエッジ e について
    P 外のノードが1つなら重みそのもの、2つ以上なら max(w_e, 0) を P 外ノード数で割って配る。
    解に入るハイパーエッジは合計で少なくとも自身の重みだけ数えられるので上界は許容的。
    """

    def __init__(self, instance: Instance):
        require_graph(instance)
        self.instance = instance
        self.n = instance.spec.size
        self.k = instance.spec.k
        self.h = instance.spec.h
        self.weights = instance.weights
        self.members = instance.codec.all_subsets()
        self.positive = np.maximum(self.weights, 0.0)
        self.tolerance = comparison_tolerance(instance)

        incident = np.bincount(
            self.members.ravel(), weights=np.repeat(self.weights, self.h), minlength=self.n)
        self.order = np.lexsort((np.arange(self.n), -incident))
        self.rows_of = [np.flatnonzero((self.members == v).any(axis=1)) for v in range(self.n)]

        self.in_partial = np.zeros(self.n, dtype=bool)
        self.chosen: List[int] = []
        self.best_subset: Optional[Tuple[int, ...]] = None
        self.best_weight = -np.inf
        self.explored = 0
        self.pruned = 0

    def _gain(self, v: int) -> float:
        """v を部分解に加えたときに新たに完成するハイパーエッジの重み和"""
        rows = self.rows_of[v]
        inside = self.in_partial[self.members[rows]].sum(axis=1) == self.h - 1
        return float(self.weights[rows[inside]].sum())

    def _bound(self, start: int, remaining: int) -> float:
        """順序位置 start 以降から remaining 個を選ぶときの追加重みの上界"""
        candidates = self.order[start:]
        in_reach = self.in_partial.copy()
        in_reach[candidates] = True

        usable = in_reach[self.members].all(axis=1)
        outside = ~self.in_partial[self.members]
        spread = outside.sum(axis=1)
        usable &= spread >= 1
        if not usable.any():
            return 0.0

        rows = np.flatnonzero(usable)
        spread = spread[rows]
        value = np.where(spread == 1, self.weights[rows], self.positive[rows] / np.maximum(spread, 1))
        targets = self.members[rows][outside[rows]]
        contribution = np.bincount(targets, weights=np.repeat(value, spread), minlength=self.n)[candidates]
        if remaining < contribution.size:
            contribution = np.partition(contribution, contribution.size - remaining)[contribution.size - remaining:]
        return float(contribution.sum())

    def _leaf(self, partial_weight: float):
        self.explored += 1
        subset = tuple(sorted(int(v) for v in self.chosen))
        if partial_weight > self.best_weight + self.tolerance:
            self.best_subset, self.best_weight = subset, solution_weight(self.instance, subset)
        elif partial_weight >= self.best_weight - self.tolerance:
            exact = solution_weight(self.instance, subset)
            if prefer(exact, subset, self.best_weight, self.best_subset, self.tolerance):
                self.best_subset, self.best_weight = subset, exact

    def _search(self, start: int, partial_weight: float):
        remaining = self.k - len(self.chosen)
        if remaining == 0:
            self._leaf(partial_weight)
            return
        if self.best_subset is not None:
            if partial_weight + self._bound(start, remaining) < self.best_weight - self.tolerance:
                self.pruned += 1
                return
        for position in range(start, self.n - remaining + 1):
            v = int(self.order[position])
            gain = self._gain(v)
            self.chosen.append(v)
            self.in_partial[v] = True
            self._search(position + 1, partial_weight + gain)
            self.in_partial[v] = False
            self.chosen.pop()

    def solve(self) -> Estimate:
        self._search(0, 0.0)
        get_logger().debug(f"bnb explored={self.explored} pruned={self.pruned}")
        return Estimate(subset=self.best_subset, weight=self.best_weight,
                        explored=self.explored, method=Method.BRANCH_AND_BOUND)


def ml_densest_bnb(instance: Instance) -> Estimate:
    """
    分枝限定法で最密 k 部分(ハイパー)グラフを求める（列挙予算なし）

    全列挙と同じ部分集合・重みを返す。explored は C(N,k) を超えない。
    """
    return BranchAndBound(instance).solve()
