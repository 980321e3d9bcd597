from typing import NamedTuple, Optional

from planted_lab.coverage import build_coverage, induced_spec
from planted_lab.estimators import ml_prem
from planted_lab.experiments.experiment_config import ExperimentConfig
from planted_lab.models import Purpose, derive_seed, sample_instance, solution_weight, stream
from planted_lab.utils.errors import SpecError
from planted_lab.utils.parallel import map_chunks


class ReductionConsistency(NamedTuple):
    group_successes: int
    prem_successes: int
    trials: int


def _group_for(instance, m: int):
    spec = instance.spec
    return build_coverage(spec.size, spec.k, spec.h, m, instance.planted, instance.planted[:m])


def count_group_successes(config: ExperimentConfig, gamma: float, m: int, start: int, stop: int) -> int:
    """planted 集合が固定した群の全メンバーより重い試行の数"""
    spec = config.spec_at(gamma)
    successes = 0
    for t in range(start, stop):
        instance = sample_instance(spec, derive_seed(config.master_seed, 0, t))
        group = _group_for(instance, m)
        planted_weight = solution_weight(instance, instance.planted)
        if all(planted_weight > solution_weight(instance, member) for member in group.members):
            successes += 1
    return successes


def count_prem_successes(config: ExperimentConfig, gamma: float, m: int, start: int, stop: int) -> int:
    """誘導 P-REM を直接サンプルし、上位1つの復号で復元できた試行の数"""
    spec = config.spec_at(gamma)
    # 群の形は planted 集合の位置に依存しないので、最初の試行の群から仕様を作る
    probe = sample_instance(spec, derive_seed(config.master_seed, 0, 0))
    reduced = induced_spec(spec, _group_for(probe, m))
    planted = (reduced.size,)
    successes = 0
    for t in range(start, stop):
        seed = int(stream(config.master_seed, Purpose.REDUCTION, t).integers(2 ** 63))
        instance = sample_instance(reduced, seed, planted=planted)
        if ml_prem(instance).recovers(instance):
            successes += 1
    return successes


def reduction_consistency(config: ExperimentConfig, gamma: float, m: int,
                          workers: Optional[int] = None) -> ReductionConsistency:
    """
    群に制限した (ハイパー)グラフでの成功数と、誘導 P-REM での成功数を比べる

    両者は同じ分布に従うので、Wilson 区間の範囲で一致するはず。
    """
    if not config.spec.is_graph:
        raise SpecError("reduction consistency needs a WSBM or HWSBM config", key="family")
    if not gamma > 0:
        raise SpecError(f"gamma={gamma} must be positive", key="gamma")
    group_successes = map_chunks(count_group_successes, config.trials, config, gamma, m, workers=workers)
    prem_successes = map_chunks(count_prem_successes, config.trials, config, gamma, m, workers=workers)
    return ReductionConsistency(group_successes, prem_successes, config.trials)
