from functools import partial
from typing import Callable

from planted_lab.estimators.branch_and_bound import ml_densest_bnb
from planted_lab.estimators.estimate import DEFAULT_ENUMERATION_BUDGET, Estimate, Method
from planted_lab.estimators.exhaustive import ml_densest_exhaustive
from planted_lab.estimators.oracle import oracle_best
from planted_lab.estimators.top_k import ml_prem
from planted_lab.models import Family, Instance
from planted_lab.utils.errors import SpecError


class EstimatorFactory:
    # キャッシュ用の静的辞書
    _estimator_cache = {}

    @staticmethod
    def get_estimator(method, enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET) -> Callable[[Instance], Estimate]:
        """
        手法名から推定関数を取得する

        Args:
            method (str | Method): "topk" / "exhaustive" / "bnb" / "oracle"
            enumeration_budget (int): 全列挙の候補数上限

        Returns:
            Callable[[Instance], Estimate]: 推定関数
        """
        try:
            method = Method(method.lower() if isinstance(method, str) else method)
        except ValueError:
            raise SpecError(f"unknown method: {method}", key="method")

        cache_key = f"{method.value}_{enumeration_budget}"
        if cache_key in EstimatorFactory._estimator_cache:
            return EstimatorFactory._estimator_cache[cache_key]

        if method == Method.TOP_K:
            estimator = ml_prem
        elif method == Method.EXHAUSTIVE:
            estimator = partial(ml_densest_exhaustive, enumeration_budget=enumeration_budget)
        elif method == Method.BRANCH_AND_BOUND:
            estimator = ml_densest_bnb
        else:
            estimator = oracle_best

        EstimatorFactory._estimator_cache[cache_key] = estimator
        return estimator

    @staticmethod
    def default_method(family: Family) -> Method:
        """ファミリーごとの既定手法（PREM は上位 k、グラフ系は分枝限定法）"""
        return Method.TOP_K if family == Family.PREM else Method.BRANCH_AND_BOUND


def solve(instance: Instance, method=None, enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET) -> Estimate:
    if method is None:
        method = EstimatorFactory.default_method(instance.spec.family)
    return EstimatorFactory.get_estimator(method, enumeration_budget)(instance)
