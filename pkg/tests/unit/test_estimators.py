import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from planted_lab.estimators.branch_and_bound import BranchAndBound
from planted_lab.estimators.estimate import prefer
from planted_lab.estimators import (
    EstimatorFactory, Method, ml_densest_bnb, ml_densest_exhaustive, ml_prem, oracle_best, revolving_door, solve,
)
from planted_lab.models import Instance, ModelSpec, SubsetCodec, noiseless_instance, sample_instance
from planted_lab.utils.errors import BudgetError, SpecError


def prem_instance(weights, k):
    spec = ModelSpec.create(family="PREM", mu_hat=1.0, sigma_hat=1.0, size=len(weights) - k, k=k)
    return Instance(spec=spec, weights=weights, planted=tuple(range(k)))


def graph_spec(N, k, h):
    family = "WSBM" if h == 2 else "HWSBM"
    return ModelSpec.create(family=family, mu_hat=1.0, sigma_hat=1.0, size=N, k=k, h=h)


def permuted(instance, permutation):
    """ノードラベルを置換したインスタンス"""
    spec = instance.spec
    codec = SubsetCodec(spec.size, spec.h)
    weights = np.empty_like(instance.weights)
    for rank, subset in enumerate(codec):
        weights[codec.rank(sorted(permutation[v] for v in subset))] = instance.weights[rank]
    planted = sorted(permutation[v] for v in instance.planted)
    return Instance(spec=spec, weights=weights, planted=planted)


def random_cases(count, seed):
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < count:
        N = int(rng.integers(5, 11))
        h = int(rng.choice([2, 3]))
        k = int(rng.integers(h, min(4, N - 1) + 1))
        gamma = float(rng.uniform(0.2, 2.0))
        cases.append(sample_instance(graph_spec(N, k, h).with_gamma(gamma), int(rng.integers(2 ** 32))))
    return cases


class TestMlPrem:
    def test_unique_max(self):
        """weights=[0.1, 5.0, -0.3], k=1 で {1} を返すことを確認"""
        assert ml_prem(prem_instance([0.1, 5.0, -0.3], 1)).subset == (1,)

    def test_top_two(self):
        """weights=[3,1,2,5], k=2 で {0,3} を返すことを確認"""
        estimate = ml_prem(prem_instance([3.0, 1.0, 2.0, 5.0], 2))
        assert estimate.subset == (0, 3)
        assert estimate.weight == pytest.approx(8.0)
        assert estimate.method == Method.TOP_K

    def test_ties_prefer_small_index(self):
        """同値 [1,1,0], k=1 で {0} を返すことを確認"""
        assert ml_prem(prem_instance([1.0, 1.0, 0.0], 1)).subset == (0,)

    def test_ties_across_threshold(self):
        """k 番目の値の同値が小さいインデックスから埋まることを確認"""
        assert ml_prem(prem_instance([2.0, 1.0, 2.0, 1.0, 3.0], 3)).subset == (0, 2, 4)

    def test_min_inside_at_least_max_outside(self):
        """返す集合の最小値が集合外の最大値以上であることを確認"""
        spec = ModelSpec.create(family="PREM", mu_hat=0.5, sigma_hat=1.0, size=500, k=7)
        for seed in range(20):
            instance = sample_instance(spec, seed)
            chosen = list(ml_prem(instance).subset)
            outside = np.delete(instance.weights, chosen)
            assert instance.weights[chosen].min() >= outside.max()

    def test_rejects_graph(self, wsbm_spec):
        """グラフ系のインスタンスを SpecError で拒否することを確認"""
        with pytest.raises(SpecError):
            ml_prem(sample_instance(wsbm_spec, 0))


class TestRevolvingDoor:
    @pytest.mark.parametrize("n,k", [(5, 2), (7, 3), (8, 4), (6, 1), (6, 6)])
    def test_adjacent_subsets_differ_by_one_swap(self, n, k):
        """隣接する部分集合が1要素の入れ替えで、全 C(n,k) 個を重複なく列挙することを確認"""
        subsets = list(revolving_door(n, k))
        assert len(subsets) == math.comb(n, k)
        assert len(set(subsets)) == len(subsets)
        for a, b in zip(subsets, subsets[1:]):
            assert len(set(a) ^ set(b)) == 2


class TestDensestSubgraph:
    def test_pick_max_edge(self):
        """N=3,k=2 で e01=1, e02=5, e12=2 なら {0,2}, W=5 を返すことを確認"""
        instance = Instance(spec=graph_spec(3, 2, 2), weights=[1.0, 5.0, 2.0], planted=(0, 1))
        for solver in (ml_densest_exhaustive, ml_densest_bnb, oracle_best):
            estimate = solver(instance)
            assert estimate.subset == (0, 2)
            assert estimate.weight == pytest.approx(5.0)

    @pytest.mark.parametrize("N,k,h", [(8, 3, 2), (9, 4, 3), (7, 4, 4)])
    def test_noiseless_returns_planted(self, N, k, h):
        """ノイズなしインスタンスで planted 集合をそのまま返すことを確認"""
        instance = noiseless_instance(graph_spec(N, k, h), [1, 2, 5, 6][:k])
        for solver in (ml_densest_exhaustive, ml_densest_bnb, oracle_best):
            assert solver(instance).recovers(instance)

    def test_n6_k3_agrees_with_oracle(self):
        """N=6,k=3 のランダムインスタンスで全列挙が素朴な探索と一致することを確認"""
        spec = graph_spec(6, 3, 2)
        for seed in range(20):
            instance = sample_instance(spec, seed)
            expected = oracle_best(instance)
            estimate = ml_densest_exhaustive(instance)
            assert estimate.subset == expected.subset
            assert estimate.weight == expected.weight

    def test_oracle_equivalence(self):
        """ランダムインスタンスで全列挙・分枝限定法・素朴な探索が同じ (subset, weight) を返すことを確認"""
        for instance in random_cases(60, seed=2024):
            expected = oracle_best(instance)
            for solver in (ml_densest_exhaustive, ml_densest_bnb):
                estimate = solver(instance)
                assert (estimate.subset, estimate.weight) == (expected.subset, expected.weight)

    @pytest.mark.slow
    def test_oracle_equivalence_full(self):
        """500 個のランダムインスタンス（N <= 10, k <= 4, h in {2,3}）での一致を確認"""
        for instance in random_cases(500, seed=7):
            expected = oracle_best(instance)
            for solver in (ml_densest_exhaustive, ml_densest_bnb):
                estimate = solver(instance)
                assert (estimate.subset, estimate.weight) == (expected.subset, expected.weight)

    def test_ties_prefer_lexicographic_smallest(self):
        """全ての重みが等しいとき全ソルバーが辞書順最小の部分集合を返すことを確認"""
        spec = graph_spec(7, 3, 2)
        instance = Instance(spec=spec, weights=np.ones(spec.weight_count), planted=(4, 5, 6))
        for solver in (ml_densest_exhaustive, ml_densest_bnb, oracle_best):
            assert solver(instance).subset == (0, 1, 2)

    def test_decimal_ties_follow_exact_arithmetic(self):
        """有理数では同値だが浮動小数の和が1ulpずれる場合も、全ソルバーが厳密な辞書順最小を返すことを確認"""
        spec = graph_spec(6, 5, 2)
        codec = SubsetCodec(6, 2)
        values = ["0.1", "0.2", "0.3", "0.7", "1.1", "0.6"]
        rng = np.random.default_rng(251)
        for _ in range(300):
            decimals = [values[i] for i in rng.integers(len(values), size=spec.weight_count)]
            instance = Instance(spec=spec, weights=[float(d) for d in decimals], planted=(0, 1, 2, 3, 4))
            exact = {
                subset: sum(Fraction(decimals[codec.rank(edge)]) for edge in combinations(subset, 2))
                for subset in combinations(range(6), 5)
            }
            best = max(exact.values())
            expected = min(subset for subset, value in exact.items() if value == best)
            for solver in (ml_densest_exhaustive, ml_densest_bnb, oracle_best):
                assert solver(instance).subset == expected

    def test_bnb_prunes_noiseless(self):
        """ノイズなしでは planted 以外の枝が刈られ、explored が C(N,k) 未満になることを確認"""
        instance = noiseless_instance(graph_spec(12, 4, 2), [0, 1, 2, 3])
        solver = BranchAndBound(instance)
        estimate = solver.solve()
        assert estimate.subset == (0, 1, 2, 3)
        assert solver.pruned > 0
        assert estimate.explored < math.comb(12, 4)

    def test_equivariance(self):
        """ノードラベルを置換すると推定も同じ置換を受けることを確認"""
        rng = np.random.default_rng(3)
        for instance in random_cases(10, seed=11):
            permutation = rng.permutation(instance.spec.size)
            moved = permuted(instance, permutation)
            expected = tuple(sorted(int(permutation[v]) for v in ml_densest_bnb(instance).subset))
            assert ml_densest_bnb(moved).subset == expected

    def test_constant_shift_keeps_argmax(self):
        """全ての重みに定数 c > 0 を足しても最適解が変わらないことを確認"""
        for instance in random_cases(10, seed=5):
            shifted = Instance(spec=instance.spec, weights=instance.weights + 2.5, planted=instance.planted)
            assert ml_densest_exhaustive(shifted).subset == ml_densest_exhaustive(instance).subset
            assert ml_densest_bnb(shifted).subset == ml_densest_bnb(instance).subset

    def test_bnb_explores_at_most_all_subsets(self):
        """分枝限定法の explored が C(N,k) を超えないことを確認"""
        for instance in random_cases(20, seed=9):
            estimate = ml_densest_bnb(instance)
            assert estimate.explored <= math.comb(instance.spec.size, instance.spec.k)
            assert estimate.method == Method.BRANCH_AND_BOUND

    def test_exhaustive_explores_all_subsets(self, wsbm_spec):
        """全列挙の explored が C(N,k) であることを確認"""
        assert ml_densest_exhaustive(sample_instance(wsbm_spec, 1)).explored == math.comb(10, 3)

    def test_budget_error(self):
        """C(N,k) が予算を超えると BudgetError が C(N,k) を持つことを確認"""
        instance = sample_instance(graph_spec(20, 10, 2), 0)
        with pytest.raises(BudgetError) as excinfo:
            ml_densest_exhaustive(instance, enumeration_budget=1000)
        assert excinfo.value.count == math.comb(20, 10)
        assert excinfo.value.exit_code == 3

    def test_resync_keeps_exact_weight(self):
        """再同期の間隔を超える列挙でも報告する重みが solution_weight と一致することを確認"""
        instance = sample_instance(graph_spec(14, 5, 2), 17)
        estimate = ml_densest_exhaustive(instance)
        assert estimate.explored == math.comb(14, 5)
        assert estimate.weight == oracle_best(instance).weight

    def test_rejects_prem(self, prem_spec):
        """PREM のインスタンスを SpecError で拒否することを確認"""
        instance = sample_instance(prem_spec, 0)
        for solver in (ml_densest_exhaustive, ml_densest_bnb, oracle_best):
            with pytest.raises(SpecError):
                solver(instance)


class TestEstimatorFactory:
    def test_get_estimator_by_name(self):
        """手法名（大文字小文字を問わない）から推定関数が得られることを確認"""
        assert EstimatorFactory.get_estimator("TOPK") is ml_prem
        assert EstimatorFactory.get_estimator(Method.BRANCH_AND_BOUND) is ml_densest_bnb
        assert EstimatorFactory.get_estimator("oracle") is oracle_best

    def test_cache(self):
        """同じ手法と予算では同じ関数オブジェクトを返すことを確認"""
        a = EstimatorFactory.get_estimator("exhaustive", 500)
        b = EstimatorFactory.get_estimator("exhaustive", 500)
        assert a is b

    def test_unknown_method(self):
        """未知の手法名が SpecError になることを確認"""
        with pytest.raises(SpecError) as excinfo:
            EstimatorFactory.get_estimator("spectral")
        assert excinfo.value.key == "method"

    def test_default_method(self, prem_spec, wsbm_spec):
        """既定の手法が PREM で上位 k、グラフ系で分枝限定法であることを確認"""
        assert solve(sample_instance(prem_spec, 0)).method == Method.TOP_K
        assert solve(sample_instance(wsbm_spec, 0)).method == Method.BRANCH_AND_BOUND

    def test_solve_passes_budget(self):
        """solve が列挙予算を全列挙に渡すことを確認"""
        instance = sample_instance(graph_spec(20, 10, 2), 0)
        with pytest.raises(BudgetError):
            solve(instance, "exhaustive", enumeration_budget=10)


class TestPrefer:
    def test_larger_weight_wins(self):
        """重みが許容幅を超えて大きい候補を採ることを確認"""
        assert prefer(2.0, (3, 4), 1.0, (0, 1), tolerance=1e-9)
        assert not prefer(1.0, (0, 1), 2.0, (3, 4), tolerance=1e-9)

    def test_tie_within_tolerance(self):
        """1ulp ずれた和を同値とみなし辞書順で判定することを確認"""
        assert 0.1 + 0.2 != 0.3
        assert prefer(0.1 + 0.2, (0, 1), 0.3, (0, 2), tolerance=1e-9)
        assert not prefer(0.3, (0, 2), 0.1 + 0.2, (0, 1), tolerance=1e-9)

    def test_first_candidate(self):
        """最良解がまだ無いときは必ず採ることを確認"""
        assert prefer(-5.0, (9,), None, None)
