from itertools import combinations

from planted_lab.estimators.estimate import Estimate, Method, comparison_tolerance, prefer, require_graph
from planted_lab.models import Instance, solution_weight


def oracle_best(instance: Instance) -> Estimate:
    """
    テスト用の素朴な全探索（増分更新なし、他ソルバーと列挙コードを共有しない）

    辞書順に全 k 部分集合を作り、毎回ハイパーエッジを数え直して重みを足す。
    比較は他ソルバーと同じ prefer に許容幅付きで通すので、同値なら辞書順最小が残る。
    """
    require_graph(instance)
    spec = instance.spec
    codec = instance.codec
    weights = instance.weights
    tolerance = comparison_tolerance(instance)

    best_subset, best_weight = None, None
    explored = 0
    for subset in combinations(range(spec.size), spec.k):
        explored += 1
        weight = 0.0
        for edge in combinations(subset, spec.h):
            weight += float(weights[codec.rank(edge)])
        if prefer(weight, subset, best_weight, best_subset, tolerance):
            best_subset, best_weight = subset, weight

    return Estimate(subset=best_subset, weight=solution_weight(instance, best_subset),
                    explored=explored, method=Method.ORACLE)
