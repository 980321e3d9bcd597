from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from planted_lab.models.model_spec import Family, ModelSpec, scale_parameters
from planted_lab.models.random_stream import Purpose, check_seed, stream
from planted_lab.models.subset_codec import SubsetCodec
from planted_lab.utils.errors import EmptySupport, SpecError


@dataclass(frozen=True, eq=False)
class Instance:
    """
    サンプリングされた問題インスタンス（構築後は不変）

    weights は PREM なら状態、グラフ系なら h 部分集合の colex 順位で並ぶ。
    planted は PREM なら状態インデックス、グラフ系ならノードインデックス。
    """
    spec: ModelSpec
    weights: np.ndarray
    planted: Tuple[int, ...]
    seed: int = 0
    null_model: bool = field(default=False)

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64)
        if weights.ndim != 1 or len(weights) != self.spec.weight_count:
            raise SpecError(f"weights length {weights.size} != E={self.spec.weight_count}", key="weights")
        planted = tuple(sorted(int(i) for i in self.planted))
        if len(set(planted)) != self.spec.k or len(planted) != self.spec.k:
            raise SpecError(f"planted set must hold k={self.spec.k} distinct indices", key="planted")
        if planted and (planted[0] < 0 or planted[-1] >= self.spec.index_range):
            raise SpecError(f"planted index outside [0, {self.spec.index_range})", key="planted")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "planted", planted)

    @cached_property
    def codec(self) -> Optional[SubsetCodec]:
        if not self.spec.is_graph:
            return None
        return SubsetCodec(self.spec.size, self.spec.h)

    def biased_indices(self) -> np.ndarray:
        """平均 mu を持つ重みのインデックス（PREM は k 個、グラフ系は C(k,h) 個）"""
        if not self.spec.is_graph:
            return np.array(self.planted, dtype=np.int64)
        return np.sort(self.codec.hyperedges_within(self.planted))

    def same_as(self, other: 'Instance') -> bool:
        return (self.spec == other.spec and self.planted == other.planted
                and self.seed == other.seed and np.array_equal(self.weights, other.weights))


def _check_indices(spec: ModelSpec, subset: Iterable[int]) -> Tuple[int, ...]:
    indices = tuple(sorted(int(i) for i in subset))
    if len(set(indices)) != len(indices):
        raise SpecError(f"duplicate indices in {list(indices)}", key="subset")
    if indices and (indices[0] < 0 or indices[-1] >= spec.index_range):
        raise SpecError(f"index outside [0, {spec.index_range})", key="subset")
    return indices


def draw_planted(spec: ModelSpec, seed: int) -> Tuple[int, ...]:
    """k 部分集合を一様に引く（重み用とは別のストリーム）"""
    rng = stream(seed, Purpose.PLANT)
    chosen = rng.choice(spec.index_range, size=spec.k, replace=False)
    return tuple(sorted(int(i) for i in chosen))


def sample_instance(
    spec: ModelSpec,
    seed: int,
    planted: Optional[Sequence[int]] = None,
    null_model: bool = False,
) -> Instance:
    """
    仕様とシードからインスタンスを生成する

    Args:
        spec (ModelSpec): モデル仕様
        seed (int): 64bit シード
        planted: 指定しない場合はシードから一様に引く
        null_model (bool): True の場合はバイアスを加えない（偶然一致率の測定用）

    Returns:
        Instance: 同じ (spec, seed, planted) なら常に同一のインスタンス
    """
    if not isinstance(spec, ModelSpec):
        raise SpecError("spec must be a ModelSpec")
    seed = check_seed(seed)
    if planted is None:
        planted = draw_planted(spec, seed)
    else:
        planted = _check_indices(spec, planted)
        if len(planted) != spec.k:
            raise SpecError(f"planted set must hold k={spec.k} indices", key="planted")

    params = scale_parameters(spec)
    rng = stream(seed, Purpose.SAMPLE)
    weights = rng.normal(0.0, params.sigma, size=spec.weight_count)
    if not null_model:
        if spec.is_graph:
            biased = SubsetCodec(spec.size, spec.h).hyperedges_within(planted)
        else:
            biased = np.array(planted, dtype=np.int64)
        weights[biased] += params.mu
    return Instance(spec=spec, weights=weights, planted=planted, seed=int(seed), null_model=null_model)


def noiseless_instance(spec: ModelSpec, planted: Sequence[int]) -> Instance:
    """ノイズなし（sigma=0 の極限）のインスタンス。バイアス重みだけが mu を持つ"""
    planted = _check_indices(spec, planted)
    weights = np.zeros(spec.weight_count)
    mu = scale_parameters(spec).mu
    if spec.is_graph:
        weights[SubsetCodec(spec.size, spec.h).hyperedges_within(planted)] = mu
    else:
        weights[list(planted)] = mu
    return Instance(spec=spec, weights=weights, planted=planted)


def solution_weight(instance: Instance, subset: Iterable[int]) -> float:
    """
    解の重み W(A) を計算する

    PREM は sum_{i in A} E_i、グラフ系は A に含まれる全ての h 部分集合の重みの和
    （各ハイパーエッジは一度だけ数える）。

    Raises:
        EmptySupport: |A| < h の場合（0 を返すことはしない）
    """
    spec = instance.spec
    indices = _check_indices(spec, subset)
    if len(indices) < spec.edge_cardinality:
        raise EmptySupport(f"|A|={len(indices)} < h={spec.edge_cardinality}")
    if spec.family == Family.PREM:
        return float(np.sum(instance.weights[list(indices)]))
    return float(np.sum(instance.weights[instance.codec.hyperedges_within(indices)]))
