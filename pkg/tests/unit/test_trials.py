import math

import pytest

from planted_lab.experiments import (
    ExperimentConfig, TrialCount, estimate_threshold, exponent_fit, measure_failures, reduction_consistency,
    run_trials, sweep, wilson_interval,
)
from planted_lab.models import Family, ModelSpec
from planted_lab.thresholds import Regime, hwsbm_thresholds
from planted_lab.utils.errors import BudgetError, ExponentLowerBoundOnly, SpecError


def prem_config(M, k=1, trials=100, grid=(1.0,), seed=11):
    spec = ModelSpec.create(family=Family.PREM, mu_hat=1.0, sigma_hat=1.0, size=M, k=k)
    return ExperimentConfig.create(spec=spec, gamma_grid=list(grid), trials=trials, master_seed=seed)


def graph_config(N, k, h=2, trials=100, grid=(1.0,), seed=11, **kwargs):
    family = Family.WSBM if h == 2 else Family.HWSBM
    spec = ModelSpec.create(family=family, mu_hat=1.0, sigma_hat=1.0, size=N, k=k, h=h)
    return ExperimentConfig.create(spec=spec, gamma_grid=list(grid), trials=trials, master_seed=seed, **kwargs)


def grid(start, stop, step):
    return [round(start + i * step, 10) for i in range(int(round((stop - start) / step)) + 1)]


class TestRunTrials:
    def test_deterministic(self, single_worker):
        """同じ設定とシードで同じ成功数になることを確認"""
        config = prem_config(500, trials=200)
        assert run_trials(config, 1.0) == run_trials(config, 1.0)

    def test_independent_of_workers(self):
        """ワーカー数を変えても成功数が変わらないことを確認"""
        config = graph_config(10, 3, trials=40)
        assert run_trials(config, 0.8, workers=1) == run_trials(config, 0.8, workers=2)

    def test_grid_index_changes_stream(self, single_worker):
        """グリッド番号が違えば別の乱数列になることを確認"""
        config = prem_config(50, trials=300)
        counts = {run_trials(config, 0.8, grid_index=i).successes for i in range(4)}
        assert len(counts) > 1

    def test_strong_signal(self, single_worker):
        """gamma=50 の PREM では全試行で復元できることを確認"""
        config = prem_config(100, trials=50)
        assert run_trials(config, 50.0) == TrialCount(50, 50)

    def test_chance_baseline(self, single_worker):
        """gamma=0 の成功率が偶然一致率 1/C(M+k,k) の Wilson 区間に入ることを確認"""
        config = prem_config(9, trials=2000)
        successes, trials = run_trials(config, 0.0)
        chance = 1.0 / math.comb(10, 1)
        assert abs(successes / trials - chance) < 4 * math.sqrt(chance * (1 - chance) / trials)

    def test_separation(self):
        """M=10^4 で phat(0.5) + 0.2 < phat(3) かつ phat(3) >= 0.99 を確認"""
        config = prem_config(10 ** 4, trials=400)
        low = run_trials(config, 0.5)
        high = run_trials(config, 3.0, grid_index=1)
        assert low.successes / 400 + 0.2 < high.successes / 400
        assert high.successes / 400 >= 0.99

    def test_budget_error_carries_trial(self, single_worker):
        """列挙予算を超えると試行番号付きの BudgetError になることを確認"""
        config = graph_config(10, 3, trials=3, method="exhaustive", enumeration_budget=10)
        with pytest.raises(BudgetError) as excinfo:
            run_trials(config, 1.0)
        assert excinfo.value.trial_index == 0
        assert excinfo.value.count == math.comb(10, 3)

    def test_negative_gamma(self):
        """負の gamma が SpecError になることを確認"""
        with pytest.raises(SpecError):
            run_trials(prem_config(100), -1.0)


class TestSweep:
    def test_grid_indices(self, mocker):
        """各グリッド点がその番号のストリームで実行されることを確認"""
        run = mocker.patch("planted_lab.experiments.trials.run_trials",
                           side_effect=lambda config, gamma, index, workers: TrialCount(index, 10))
        config = prem_config(100, trials=10, grid=(0.5, 1.0, 1.5))
        curve = sweep(config, progress=False)
        assert [row.successes for row in curve.rows] == [0, 1, 2]
        assert [row.gamma for row in curve.rows] == [0.5, 1.0, 1.5]
        assert run.call_count == 3
        assert curve.config_hash == config.config_hash()
        assert curve.seed == config.master_seed

    def test_reproducible(self, single_worker):
        """曲線が (設定, マスターシード) だけで決まることを確認"""
        config = prem_config(200, trials=50, grid=(0.5, 1.0, 2.0))
        assert sweep(config, progress=False) == sweep(config, progress=False)


class TestMeasureFailures:
    def test_cells_per_size(self, single_worker):
        """サイズごとに1セルを返し、強い信号では ExponentLowerBoundOnly になることを確認"""
        config = prem_config(100, trials=30)
        cells = measure_failures(config, 50.0, [100, 200, 400])
        assert [cell.size for cell in cells] == [100, 200, 400]
        assert all(cell.is_bound for cell in cells)
        with pytest.raises(ExponentLowerBoundOnly):
            exponent_fit(cells)


class TestReductionConsistency:
    def test_group_matches_prem(self):
        """群に制限した成功率と誘導 P-REM の成功率が Wilson 区間で重なることを確認"""
        config = graph_config(14, 4, trials=300)
        group_successes, prem_successes, trials = reduction_consistency(config, 1.0, 2)
        lo_group, hi_group = wilson_interval(group_successes, trials)
        lo_prem, hi_prem = wilson_interval(prem_successes, trials)
        assert lo_group <= hi_prem and lo_prem <= hi_group

    def test_prem_rejected(self):
        """PREM の設定や gamma <= 0 が SpecError になることを確認"""
        with pytest.raises(SpecError):
            reduction_consistency(prem_config(100), 1.0, 0)
        with pytest.raises(SpecError):
            reduction_consistency(graph_config(14, 4), 0.0, 2)


@pytest.mark.slow
class TestRecoveryAcceptance:
    def test_prem_threshold_bracket(self):
        """PREM k=1 の 0.5 交点が [0.7, 1.6] にあり、M が大きいほど 1 に近づくことを確認"""
        crossings = []
        for M in (10 ** 3, 10 ** 4):
            config = prem_config(M, trials=400, grid=grid(0.4, 3.0, 0.2))
            curve = sweep(config, progress=False)
            assert run_trials(config, 0.5, grid_index=100).successes <= 0.3 * 400
            assert run_trials(config, 2.5, grid_index=101).successes >= 0.95 * 400
            crossing = estimate_threshold(curve).gamma
            assert 0.7 <= crossing <= 1.6
            crossings.append(crossing)
        assert abs(crossings[1] - 1.0) <= abs(crossings[0] - 1.0) + 0.15

    def test_failure_exponent(self):
        """gamma=1.5 の傾きが 0.25 ± 0.15、gamma=3 で M=10^3 の失敗が0回であることを確認"""
        config = prem_config(10 ** 3, trials=1000)
        cells = measure_failures(config, 1.5, [10 ** 3, 3 * 10 ** 3, 10 ** 4, 3 * 10 ** 4])
        assert cells[0].failures >= 30
        assert exponent_fit(cells, gamma=1.5).slope == pytest.approx(0.25, abs=0.15)
        assert run_trials(config, 3.0).successes == 1000

    def test_multi_planted_gap(self):
        """k = M^(1/4) の 0.5 交点が [0.8, 1.8] にあることを確認"""
        curve = sweep(prem_config(10 ** 4, k=10, trials=400, grid=grid(0.2, 2.6, 0.1)), progress=False)
        assert 0.8 <= estimate_threshold(curve).gamma <= 1.8

    @pytest.mark.parametrize("h", [2, 3])
    def test_graph_bracket(self, h):
        """N=30, k=4 の交点が [0.5 gamma_-, 2 gamma_+] にあることを確認"""
        report = hwsbm_thresholds(30, 4, h)
        curve = sweep(graph_config(30, 4, h=h, trials=200, grid=grid(0.1, 3.0, 0.1)), progress=False)
        crossing = estimate_threshold(curve).gamma
        assert 0.5 * report.gamma_minus <= crossing <= 2.0 * report.gamma_plus_by_regime[Regime.SMALL_K]

    def test_graph_difficulty_decreases_with_k(self):
        """h=2 で k を 3 から 5 に増やすと交点が下がることを確認"""
        crossings = [
            estimate_threshold(sweep(graph_config(30, k, trials=200, grid=grid(0.1, 3.0, 0.1)), progress=False)).gamma
            for k in (3, 5)
        ]
        assert crossings[1] < crossings[0]
