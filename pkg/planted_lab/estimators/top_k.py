import numpy as np

from planted_lab.estimators.estimate import Estimate, Method
from planted_lab.models import Family, Instance, solution_weight
from planted_lab.utils.errors import SpecError


def ml_prem(instance: Instance) -> Estimate:
    """
    P-REM の最尤推定: 重みが大きい上位 k 個の状態を返す

    部分選択（np.partition）で k 番目の値を求め、それより大きいものを全て採り、
    同値の残りはインデックスの小さい順に採る。期待 O(M+k)。

    Args:
        instance (Instance): PREM インスタンス

    Returns:
        Estimate: 推定結果
    """
    if instance.spec.family != Family.PREM:
        raise SpecError(f"top-k decoder needs PREM, got {instance.spec.family.value}", key="family")
    weights = instance.weights
    k = instance.spec.k
    n = weights.size
    if k >= n:
        chosen = np.arange(n)
    else:
        threshold = np.partition(weights, n - k)[n - k]
        above = np.flatnonzero(weights > threshold)
        # flatnonzero は昇順なので、同値は小さいインデックスから埋まる
        ties = np.flatnonzero(weights == threshold)[: k - above.size]
        chosen = np.sort(np.concatenate([above, ties]))
    subset = tuple(int(i) for i in chosen)
    return Estimate(subset=subset, weight=solution_weight(instance, subset), explored=n, method=Method.TOP_K)
