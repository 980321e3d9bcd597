import math
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np


@lru_cache(maxsize=64)
def binomial_table(n: int, h: int) -> np.ndarray:
    """table[c, j] = C(c, j) for 0 <= c <= n, 0 <= j <= h (int64)"""
    # 有効な順位に現れる項は C(n,h) 未満なので、溢れる項は上限で打ち切ってよい
    cap = np.iinfo(np.int64).max
    table = np.zeros((n + 1, h + 1), dtype=np.int64)
    for c in range(n + 1):
        for j in range(min(c, h) + 1):
            table[c, j] = min(math.comb(c, j), cap)
    table.setflags(write=False)
    return table


class SubsetCodec:
    """
    {0..n-1} の h 部分集合と colex 順位の相互変換

    順位 r(S) = sum_j C(s_j, j+1) （s_0 < s_1 < ... < s_{h-1}）。
    重み配列は C(n,h) 個のハイパーエッジをこの順位で平坦に格納する。
    """

    def __init__(self, n: int, h: int):
        if n < 1 or not 1 <= h <= n:
            raise ValueError(f"invalid codec n={n}, h={h}")
        self.n = n
        self.h = h
        self.count = math.comb(n, h)

    def rank(self, subset: Sequence[int]) -> int:
        """
        部分集合の colex 順位を返す

        Args:
            subset: 狭義単調増加のインデックス列

        Returns:
            int: [0, C(n,h)) の順位

        Raises:
            IndexError: 長さ・範囲・順序が不正な場合
        """
        if len(subset) != self.h:
            raise IndexError(f"subset size {len(subset)} != h={self.h}")
        previous = -1
        rank = 0
        for j, c in enumerate(subset):
            c = int(c)
            if c <= previous or c >= self.n:
                raise IndexError(f"malformed subset {list(subset)} for n={self.n}")
            rank += math.comb(c, j + 1)
            previous = c
        return rank

    def unrank(self, rank: int) -> List[int]:
        """
        colex 順位から部分集合を復元する

        Raises:
            IndexError: 順位が [0, C(n,h)) の外にある場合
        """
        rank = int(rank)
        if not 0 <= rank < self.count:
            raise IndexError(f"rank {rank} outside [0, {self.count})")
        subset = [0] * self.h
        n = self.n
        for j in range(self.h, 0, -1):
            # C(c, j) <= rank を満たす最大の c
            n -= 1
            while math.comb(n, j) > rank:
                n -= 1
            subset[j - 1] = n
            rank -= math.comb(n, j)
        return subset

    def rank_many(self, subsets: np.ndarray) -> np.ndarray:
        """
        (count, h) 配列の各行（昇順）の順位をまとめて計算する
        """
        subsets = np.asarray(subsets, dtype=np.int64)
        if subsets.size == 0:
            return np.zeros(0, dtype=np.int64)
        table = binomial_table(self.n, self.h)
        columns = np.arange(1, self.h + 1)
        return table[subsets, columns].sum(axis=1)

    def hyperedges_within(self, nodes: Iterable[int]) -> np.ndarray:
        """ノード集合に含まれる全ての h 部分集合の順位（昇順ノードから生成）"""
        nodes = sorted(int(v) for v in nodes)
        if len(nodes) < self.h:
            return np.zeros(0, dtype=np.int64)
        subsets = np.array(list(combinations(nodes, self.h)), dtype=np.int64)
        return self.rank_many(subsets)

    def all_subsets(self) -> np.ndarray:
        """全 h 部分集合を colex 順に並べた (C(n,h), h) 配列"""
        subsets = np.array(list(combinations(range(self.n), self.h)), dtype=np.int64)
        order = np.argsort(self.rank_many(subsets))
        return subsets[order]

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        for row in self.all_subsets():
            yield tuple(int(v) for v in row)


def rank_subset(codec: SubsetCodec, subset: Sequence[int]) -> int:
    return codec.rank(subset)


def unrank_subset(codec: SubsetCodec, rank: int) -> List[int]:
    return codec.unrank(rank)
