import math

import numpy as np

from planted_lab.coverage.coverage_group import CoverageGroup, reduced_hyperedges
from planted_lab.models import Family, Instance, ModelSpec, scale_parameters
from planted_lab.utils.errors import DegenerateCoverage, SpecError


def induced_spec(spec: ModelSpec, group: CoverageGroup) -> ModelSpec:
    """
    群が誘導する 1-P-REM の仕様

    各状態は ell_m 個の重みの和なので平均 ell_m mu、分散 ell_m sigma^2。
    これを状態数 M_m の P-REM のスケーリングに戻した mu_hat, sigma_hat を持つ。
    """
    size = group.size
    if size < 2:
        raise DegenerateCoverage(f"M_m={size} < 2 leaves ln M_m <= 0")
    params = scale_parameters(spec)
    log_size = math.log(size)
    ell = group.reduced_ell
    return ModelSpec.create(
        family=Family.PREM,
        mu_hat=ell * params.mu / log_size,
        sigma_hat=math.sqrt(ell) * params.sigma / math.sqrt(log_size / 2.0),
        size=size,
        k=1,
    )


def reduce_to_prem(instance: Instance, group: CoverageGroup) -> Instance:
    """
    (ハイパー)グラフのインスタンスを群に制限し、1-P-REM のインスタンスに変換する

    状態の順序はメンバー、最後に planted 集合 S。状態の重みは W(member) - W(I)
    （m < h なら W(I) = 0）で、planted のインデックスは M_m。
    共通の定数を引くだけなので W(S) > W(member) の大小関係は保たれる。

    Args:
        instance (Instance): WSBM または HWSBM のインスタンス
        group (CoverageGroup): 同じ N, k, h で I ⊆ planted の群

    Returns:
        Instance: 状態数 M_m + 1 の P-REM インスタンス

    Raises:
        SpecError: 群とインスタンスが合わない場合
        DegenerateCoverage: M_m < 2 の場合
    """
    spec = instance.spec
    if not spec.is_graph:
        raise SpecError("reduce_to_prem needs a WSBM or HWSBM instance", key="family")
    if (group.N, group.k, group.h) != (spec.size, spec.k, spec.h):
        raise SpecError(f"group (N={group.N}, k={group.k}, h={group.h}) does not match instance", key="group")
    if group.planted != instance.planted:
        raise SpecError("group was built for another planted set", key="group")

    reduced_spec = induced_spec(spec, group)
    weights = np.array([instance.weights[edges].sum() for edges in reduced_hyperedges(group, instance.codec)])
    return Instance(spec=reduced_spec, weights=weights, planted=(group.size,),
                    seed=instance.seed, null_model=instance.null_model)
