"""シード付きモンテカルロ試行。

試行 t の乱数は (master_seed, グリッド番号, t) だけで決まり、
ワーカー数や実行順序に依存しない。
"""
from typing import List, NamedTuple, Optional, Sequence

from tqdm import tqdm

from planted_lab.estimators import EstimatorFactory
from planted_lab.experiments.experiment_config import ExperimentConfig
from planted_lab.experiments.exponent import FailureCell
from planted_lab.experiments.recovery_curve import CurveRow, RecoveryCurve
from planted_lab.models import derive_seed, sample_instance
from planted_lab.utils.errors import BudgetError, SpecError
from planted_lab.utils.logger import get_logger
from planted_lab.utils.parallel import map_chunks


class TrialCount(NamedTuple):
    successes: int
    trials: int


def count_successes(config: ExperimentConfig, gamma: float, grid_index: int, start: int, stop: int) -> int:
    """試行 [start, stop) の成功数（ワーカープロセスから呼ばれる）"""
    spec = config.spec_at(gamma)
    estimator = EstimatorFactory.get_estimator(config.estimator_method, config.enumeration_budget)
    null_model = gamma == 0
    successes = 0
    for t in range(start, stop):
        seed = derive_seed(config.master_seed, grid_index, t)
        instance = sample_instance(spec, seed, null_model=null_model)
        try:
            estimate = estimator(instance)
        except BudgetError as e:
            raise BudgetError(e.count, e.budget, trial_index=t) from e
        if estimate.recovers(instance):
            successes += 1
    return successes


def run_trials(config: ExperimentConfig, gamma: float, grid_index: int = 0,
               workers: Optional[int] = None) -> TrialCount:
    """
    固定した gamma で trials 回の試行を行い、完全復元の回数を数える

    Args:
        config (ExperimentConfig): 実験設定
        gamma (float): SNR（0 はヌルモデルでの偶然一致率）
        grid_index (int): 乱数ストリームのグリッド番号
        workers (int): ワーカー数（None の場合は環境変数）

    Returns:
        TrialCount: (成功数, 試行数)
    """
    if gamma < 0:
        raise SpecError(f"gamma={gamma} must be non-negative", key="gamma")
    successes = map_chunks(count_successes, config.trials, config, gamma, grid_index, workers=workers)
    return TrialCount(successes, config.trials)


def sweep(config: ExperimentConfig, workers: Optional[int] = None, progress: bool = True) -> RecoveryCurve:
    """
    gamma グリッドの各点で run_trials を行い、Wilson 区間付きの曲線を返す
    """
    logger = get_logger()
    config_hash = config.config_hash()
    logger.info(f"sweep start: family={config.spec.family.value} size={config.spec.size} k={config.spec.k} "
                f"points={len(config.gamma_grid)} trials={config.trials} config_hash={config_hash}")
    rows = []
    for grid_index, gamma in enumerate(tqdm(config.gamma_grid, desc="sweep", disable=not progress)):
        successes, trials = run_trials(config, gamma, grid_index, workers)
        row = CurveRow.from_counts(gamma, successes, trials)
        logger.info(f"gamma={gamma:.4f} successes={successes}/{trials} phat={row.phat:.4f}")
        rows.append(row)
    return RecoveryCurve(rows=rows, config_hash=config_hash, seed=config.master_seed)


def measure_failures(config: ExperimentConfig, gamma: float, sizes: Sequence[int],
                     workers: Optional[int] = None, progress: bool = False) -> List[FailureCell]:
    """
    固定した gamma でサイズごとの失敗率を測る（exponent_fit の入力）

    サイズ j の試行はグリッド番号 j のストリームを使う。
    """
    cells = []
    for index, size in enumerate(tqdm(sizes, desc="sizes", disable=not progress)):
        sized = config.model_copy(update={"spec": config.spec.with_size(int(size))})
        successes, trials = run_trials(sized, gamma, index, workers)
        cell = FailureCell.from_counts(int(size), successes, trials)
        get_logger().info(f"size={size} failures={cell.failures}/{trials} rate={cell.rate:.3g}")
        cells.append(cell)
    return cells
