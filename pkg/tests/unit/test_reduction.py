import numpy as np
import pytest

from planted_lab.coverage import build_coverage, induced_spec, reduce_to_prem
from planted_lab.models import Family, ModelSpec, sample_instance, scale_parameters, solution_weight
from planted_lab.utils.errors import DegenerateCoverage, SpecError


@pytest.fixture
def graph_spec():
    return ModelSpec.create(family=Family.WSBM, mu_hat=1.0, sigma_hat=1.0, size=12, k=4)


class TestReduceToPrem:
    def test_noiseless(self, graph_spec, noiseless):
        """ノイズなしでは planted 状態だけが ell mu を持ち、他は 0 になることを確認"""
        instance = noiseless(graph_spec, [0, 1, 2, 3])
        group = build_coverage(12, 4, 2, 2, instance.planted, [0, 1])
        reduced = reduce_to_prem(instance, group)
        mu = scale_parameters(graph_spec).mu
        assert group.reduced_ell == 5
        assert reduced.spec.family == Family.PREM
        assert reduced.spec.size == group.size == 4
        assert reduced.planted == (4,)
        assert reduced.weights[:-1] == pytest.approx(np.zeros(4))
        assert reduced.weights[-1] == pytest.approx(5 * mu)

    def test_comparisons_preserved(self, graph_spec):
        """W(S) > W(member) と縮約後の大小が100インスタンスで一致することを確認"""
        for seed in range(100):
            instance = sample_instance(graph_spec, seed)
            group = build_coverage(12, 4, 2, 2, instance.planted, instance.planted[:2])
            reduced = reduce_to_prem(instance, group)
            planted_weight = solution_weight(instance, instance.planted)
            for i, member in enumerate(group.members):
                original = planted_weight > solution_weight(instance, member)
                assert original == (reduced.weights[-1] > reduced.weights[i])

    def test_induced_scaling(self, graph_spec):
        """誘導仕様の mu, sigma が ell mu, sqrt(ell) sigma になることを確認"""
        group = build_coverage(12, 4, 2, 1, [0, 1, 2, 3], [0])
        reduced_spec = induced_spec(graph_spec, group)
        params = scale_parameters(graph_spec)
        reduced = scale_parameters(reduced_spec)
        assert reduced.mu == pytest.approx(group.reduced_ell * params.mu)
        assert reduced.sigma == pytest.approx(np.sqrt(group.reduced_ell) * params.sigma)

    def test_hypergraph(self, hwsbm_spec, noiseless):
        """HWSBM でも I 内部を除いた重みになることを確認"""
        instance = noiseless(hwsbm_spec, [0, 1, 2, 3])
        group = build_coverage(9, 4, 3, 2, instance.planted, [0, 1])
        reduced = reduce_to_prem(instance, group)
        mu = scale_parameters(hwsbm_spec).mu
        assert reduced.weights[-1] == pytest.approx(4 * mu)
        assert np.all(reduced.weights[:-1] == 0)

    def test_mismatched_group(self, graph_spec):
        """別の planted 集合やサイズの群が SpecError になることを確認"""
        instance = sample_instance(graph_spec, 1, planted=[0, 1, 2, 3])
        other = build_coverage(12, 4, 2, 2, [4, 5, 6, 7], [4, 5])
        with pytest.raises(SpecError):
            reduce_to_prem(instance, other)
        resized = build_coverage(13, 4, 2, 2, [0, 1, 2, 3], [0, 1])
        with pytest.raises(SpecError):
            reduce_to_prem(instance, resized)

    def test_prem_rejected(self, prem_spec):
        """PREM インスタンスが SpecError になることを確認"""
        instance = sample_instance(prem_spec, 1)
        group = build_coverage(12, 4, 2, 2, [0, 1, 2, 3], [0, 1])
        with pytest.raises(SpecError):
            reduce_to_prem(instance, group)

    def test_single_member_degenerate(self):
        """M_m = 1 の群が DegenerateCoverage になることを確認"""
        spec = ModelSpec.create(family=Family.WSBM, mu_hat=1.0, sigma_hat=1.0, size=7, k=4)
        instance = sample_instance(spec, 2, planted=[0, 1, 2, 3])
        group = build_coverage(7, 4, 2, 1, instance.planted, [0])
        with pytest.raises(DegenerateCoverage):
            reduce_to_prem(instance, group)


def _reduced_samples(spec, trials):
    samples = []
    for seed in range(trials):
        instance = sample_instance(spec, seed, planted=[0, 1, 2, 3])
        group = build_coverage(spec.size, spec.k, spec.h, 2, instance.planted, [0, 1])
        samples.append(reduce_to_prem(instance, group).weights)
    return np.array(samples)


def _check_moments(spec, trials):
    samples = _reduced_samples(spec, trials)
    params = scale_parameters(spec)
    ell = 5
    sigma = np.sqrt(ell) * params.sigma
    tolerance = 4 * sigma / np.sqrt(trials)
    means = samples.mean(axis=0)
    assert means[:-1] == pytest.approx(np.zeros(samples.shape[1] - 1), abs=tolerance)
    assert means[-1] == pytest.approx(ell * params.mu, abs=tolerance)
    assert samples.std(axis=0) == pytest.approx(np.full(samples.shape[1], sigma), rel=0.2)
    correlation = np.corrcoef(samples, rowvar=False)
    off_diagonal = correlation[~np.eye(samples.shape[1], dtype=bool)]
    assert np.max(np.abs(off_diagonal)) < 4 / np.sqrt(trials)


class TestReducedDistribution:
    def test_moments(self, graph_spec):
        """縮約後の状態の平均・分散・無相関性を確認"""
        _check_moments(graph_spec, 400)

    @pytest.mark.slow
    def test_moments_full(self):
        """N=20 の2000試行で同じ性質を確認"""
        spec = ModelSpec.create(family=Family.WSBM, mu_hat=1.0, sigma_hat=1.0, size=20, k=4)
        _check_moments(spec, 2000)
