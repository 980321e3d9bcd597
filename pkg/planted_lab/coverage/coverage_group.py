from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from planted_lab.models import SubsetCodec
from planted_lab.thresholds.induced_prem import check_overlap, coverage_size, reduced_ell
from planted_lab.utils.errors import DegenerateCoverage, SpecError


class CoverageGroup(BaseModel):
    """
    共通部分 I 以外ではノードが互いに素な候補解の族

    Attributes:
        intersection: planted 集合 S の部分集合 I（|I| = m）
        members: 各メンバー I ∪ block_i（昇順タプル）
        m: 重なり
        planted: 群を作ったときの planted 集合 S
        reduced_ell: 1状態あたりのハイパーエッジ数 ell_m
    """
    model_config = ConfigDict(frozen=True)

    intersection: Tuple[int, ...]
    planted: Tuple[int, ...]
    members: List[Tuple[int, ...]]
    m: int
    reduced_ell: int
    N: int
    k: int
    h: int

    @property
    def size(self) -> int:
        return len(self.members)

    def outside_blocks(self) -> List[Tuple[int, ...]]:
        """各メンバーのうち I 以外のノード"""
        inside = set(self.intersection)
        return [tuple(v for v in member if v not in inside) for member in self.members]


class CoverageReport(BaseModel):
    """verify_coverage の結果（違反があれば最初の1件とメンバー対）"""
    model_config = ConfigDict(frozen=True)

    passed: bool
    violation: Optional[str] = None
    pair: Optional[Tuple[int, int]] = None


def _node_set(N: int, nodes: Sequence[int], key: str) -> Tuple[int, ...]:
    result = tuple(sorted(int(v) for v in nodes))
    if len(set(result)) != len(result):
        raise SpecError(f"duplicate nodes in {list(result)}", key=key)
    if result and (result[0] < 0 or result[-1] >= N):
        raise SpecError(f"node outside [0, {N})", key=key)
    return result


def build_coverage(N: int, k: int, h: int, m: int, S: Sequence[int], I: Sequence[int],
                   lead_block: Optional[Sequence[int]] = None) -> CoverageGroup:
    """
    S の外側のノードを k-m 個ずつの連続ブロックに分け、各ブロックと I でメンバーを作る

    Args:
        N, k, h, m (int): グラフのサイズ・planted サイズ・エッジ濃度・重なり
        S: planted 集合（|S| = k）
        I: S の部分集合（|I| = m）
        lead_block: 先頭に置く k-m 個の外側ノード（指定しない場合は昇順のみ）

    Returns:
        CoverageGroup: floor((N-k)/(k-m)) 個のメンバーを持つ群

    Raises:
        DegenerateCoverage: メンバーが1つも作れない場合
    """
    check_overlap(N, k, h, m)
    planted = _node_set(N, S, "S")
    intersection = _node_set(N, I, "I")
    if len(planted) != k:
        raise SpecError(f"|S|={len(planted)} != k={k}", key="S")
    if len(intersection) != m or not set(intersection) <= set(planted):
        raise SpecError(f"I must be an {m}-subset of S", key="I")

    count = coverage_size(N, k, m)
    if count < 1:
        raise DegenerateCoverage(f"M_m=0 for N={N}, k={k}, m={m}")

    block = k - m
    outside = [v for v in range(N) if v not in set(planted)]
    if lead_block is not None:
        lead = _node_set(N, lead_block, "lead_block")
        if len(lead) != block or not set(lead) <= set(outside):
            raise SpecError(f"lead block must hold {block} nodes outside S", key="lead_block")
        outside = list(lead) + [v for v in outside if v not in set(lead)]

    members = [tuple(sorted(intersection + tuple(outside[i * block:(i + 1) * block]))) for i in range(count)]
    return CoverageGroup(intersection=intersection, planted=planted, members=members, m=m,
                         reduced_ell=reduced_ell(k, h, m), N=N, k=k, h=h)


def verify_coverage(group: CoverageGroup, S: Sequence[int]) -> CoverageReport:
    """
    群の不変条件とエッジ単位の独立性を検査する（例外は投げず結果を返す）

    メンバー同士が共有する h 部分集合がちょうど I の h 部分集合であることまで確かめる。
    """
    planted = set(int(v) for v in S)
    inside = set(group.intersection)
    if len(inside) != group.m or not inside <= planted:
        return CoverageReport(passed=False, violation=f"intersection {group.intersection} is not an m-subset of S")
    expected = coverage_size(group.N, group.k, group.m)
    if len(group.members) != expected:
        return CoverageReport(passed=False, violation=f"{len(group.members)} members, expected M_m={expected}")

    for i, member in enumerate(group.members):
        nodes = set(member)
        if len(nodes) != group.k or len(member) != group.k:
            return CoverageReport(passed=False, violation=f"member {i} does not hold k={group.k} nodes")
        if nodes & planted != inside:
            return CoverageReport(passed=False, violation=f"member {i} meets S outside I")

    codec = SubsetCodec(group.N, group.h)
    within_i = set(codec.hyperedges_within(group.intersection).tolist())
    edges = [set(codec.hyperedges_within(member).tolist()) for member in group.members]
    for a, b in combinations(range(len(group.members)), 2):
        if set(group.members[a]) & set(group.members[b]) != inside:
            return CoverageReport(passed=False, violation=f"members {a} and {b} share nodes outside I", pair=(a, b))
        if edges[a] & edges[b] != within_i:
            return CoverageReport(passed=False, violation=f"members {a} and {b} share hyperedges outside I",
                                  pair=(a, b))
    return CoverageReport(passed=True)


def seed_family(N: int, k: int, h: int, m: int, S: Sequence[int]) -> Iterator[CoverageGroup]:
    """
    重なり m の全ての解を覆う群の列を遅延生成する

    各 I について、まだ覆われていない最初の外側ブロックを先頭にして群を作る。
    全メンバーの和集合は |A ∩ S| = m の解全体に一致する（小さな N での検証用）。
    """
    planted = _node_set(N, S, "S")
    outside = [v for v in range(N) if v not in set(planted)]
    for intersection in combinations(planted, m):
        covered: Set[Tuple[int, ...]] = set()
        for lead in combinations(outside, k - m):
            if lead in covered:
                continue
            group = build_coverage(N, k, h, m, planted, intersection, lead_block=lead)
            covered.update(group.outside_blocks())
            yield group


def reduced_hyperedges(group: CoverageGroup, codec: Optional[SubsetCodec] = None) -> List[np.ndarray]:
    """
    各状態（メンバー、最後に S）の I 内部を除いたハイパーエッジ順位

    どの集合もちょうど ell_m 個で、互いに素であれば状態の重みは独立になる。
    """
    if codec is None:
        codec = SubsetCodec(group.N, group.h)
    within_i = codec.hyperedges_within(group.intersection)
    states = list(group.members) + [group.planted]
    return [np.setdiff1d(codec.hyperedges_within(state), within_i) for state in states]
