"""Sampler tests: density evaluation, chain determinism, distributional
agreement with the closed forms, matrix-model backend, k-statistics, CSV."""

import math

import numpy as np
import pytest
from scipy import stats

from bureshall.cumulants import EnsembleDims, kappa1
from bureshall.sampler import (
    ChainConfig,
    DegenerateInputError,
    Spectrum,
    UnconstrainedSpectrum,
    entropy,
    entropy_T,
    k_statistics,
    log_density_unconstrained,
    mcmc_chain,
    project_to_simplex,
    read_sample_csv,
    sample_matrix_model,
    sample_matrix_model_batch,
    write_sample_csv,
)

K1_22 = 0.2196276944532239  # 2 ln 2 - 7/6


class TestLogDensity:
    def test_single_particle(self):
        # m = n = 1: alpha = -1/2, x = 1: alpha*ln(1) - 1
        assert log_density_unconstrained([1.0], EnsembleDims(1, 1)) == pytest.approx(-1.0)

    def test_two_particles(self):
        expected = math.log(1 / 3) - 0.5 * (math.log(1) + math.log(2)) - 3.0
        value = log_density_unconstrained([1.0, 2.0], EnsembleDims(2, 2))
        assert value == pytest.approx(expected, abs=1e-14)

    def test_permutation_symmetry(self):
        dims = EnsembleDims(2, 2)
        a = log_density_unconstrained([1.0, 2.0], dims)
        b = log_density_unconstrained([2.0, 1.0], dims)
        assert a == pytest.approx(b, abs=0)

    def test_coincident_rejected(self):
        with pytest.raises(DegenerateInputError):
            log_density_unconstrained([1.0, 1.0], EnsembleDims(2, 2))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            log_density_unconstrained([1.0, -2.0], EnsembleDims(2, 2))
        with pytest.raises(ValueError):
            log_density_unconstrained([1.0], EnsembleDims(2, 2))


class TestProjectionAndEntropy:
    def test_project_examples(self):
        spec, theta = project_to_simplex(UnconstrainedSpectrum(np.array([2.0, 2.0]), 4.0))
        assert theta == 4.0
        np.testing.assert_allclose(spec.lam, [0.5, 0.5])
        spec, theta = project_to_simplex(UnconstrainedSpectrum(np.array([1.0, 3.0]), 4.0))
        np.testing.assert_allclose(spec.lam, [0.25, 0.75])

    def test_entropy_endpoints(self):
        assert entropy(Spectrum(np.array([1.0, 0.0, 0.0]))) == 0.0
        m = 4
        assert entropy(Spectrum(np.full(m, 1.0 / m))) == pytest.approx(math.log(m))
        assert entropy(Spectrum(np.array([0.5, 0.5]))) == pytest.approx(math.log(2))

    def test_entropy_bounds_on_random_projections(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            x = rng.gamma(0.7, size=3)
            spec, _ = project_to_simplex(UnconstrainedSpectrum(x, float(x.sum())))
            assert 0.0 <= entropy(spec) <= math.log(3) + 1e-12

    def test_entropy_T_examples(self):
        assert entropy_T(UnconstrainedSpectrum(np.array([1.0]), 1.0)) == 0.0
        assert entropy_T(UnconstrainedSpectrum(np.array([math.e]), math.e)) == pytest.approx(math.e)
        assert entropy_T(UnconstrainedSpectrum(np.array([2.0, 2.0]), 4.0)) == pytest.approx(
            4 * math.log(2)
        )

    def test_spectrum_validation(self):
        with pytest.raises(ValueError):
            Spectrum(np.array([0.7, 0.7]))
        with pytest.raises(ValueError):
            Spectrum(np.array([-0.1, 1.1]))


class TestKStatistics:
    def test_symmetric_data(self):
        st = k_statistics([1, 2, 3])
        assert (st.k1, st.k2, st.k3) == (2.0, 1.0, 0.0)
        assert math.isnan(st.se1)

    def test_unbiased_formula_hand_check(self):
        # N=4, data (0,0,0,1): k3 = N^2/((N-1)(N-2)) * mean cubed deviation = 1/4
        st = k_statistics([0, 0, 0, 1])
        assert st.k1 == pytest.approx(0.25)
        assert st.k2 == pytest.approx(0.25)
        assert st.k3 == pytest.approx(0.25)

    def test_constant_list(self):
        st = k_statistics([5.0] * 200)
        assert (st.k1, st.k2, st.k3) == (5.0, 0.0, 0.0)
        assert st.se1 == st.se2 == st.se3 == 0.0

    def test_too_few_values(self):
        with pytest.raises(ValueError):
            k_statistics([1.0, 2.0])

    def test_unbiasedness_of_k2_k3_monte_carlo(self):
        # average of k2, k3 over many small exponential samples matches the
        # population cumulants (1 and 2) much better than the biased moments
        rng = np.random.default_rng(42)
        k2s, k3s = [], []
        for _ in range(4000):
            sample = rng.exponential(size=8)
            st = k_statistics(sample)
            k2s.append(st.k2)
            k3s.append(st.k3)
        assert np.mean(k2s) == pytest.approx(1.0, abs=0.02)
        assert np.mean(k3s) == pytest.approx(2.0, abs=0.1)

    def test_ses_present_for_long_input(self):
        rng = np.random.default_rng(1)
        st = k_statistics(rng.normal(size=5000))
        assert st.se1 == pytest.approx(1 / math.sqrt(5000), rel=0.3)
        assert all(np.isfinite([st.se1, st.se2, st.se3]))


class TestChainConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            ChainConfig(samples=0)
        with pytest.raises(ValueError):
            ChainConfig(samples=10, thinning=0)
        with pytest.raises(ValueError):
            ChainConfig(samples=10, burn_in=-1)
        with pytest.raises(ValueError):
            ChainConfig(samples=10, step_scale=0.0)
        with pytest.raises(ValueError):
            ChainConfig(samples=10, seed=-1)


class TestMcmc:
    def test_deterministic(self):
        cfg = ChainConfig(samples=1500, burn_in=300, thinning=3, chain_count=10, seed=5)
        dims = EnsembleDims(2, 3)
        a = mcmc_chain(dims, cfg)
        b = mcmc_chain(dims, cfg)
        assert np.array_equal(a.spectra, b.spectra)
        assert np.array_equal(a.thetas, b.thetas)
        assert np.array_equal(a.entropies, b.entropies)

    def test_seed_changes_output(self):
        dims = EnsembleDims(2, 3)
        a = mcmc_chain(dims, ChainConfig(samples=500, burn_in=100, chain_count=4, seed=1))
        b = mcmc_chain(dims, ChainConfig(samples=500, burn_in=100, chain_count=4, seed=2))
        assert not np.array_equal(a.spectra, b.spectra)

    def test_batch_invariants(self):
        cfg = ChainConfig(samples=777, burn_in=200, thinning=2, chain_count=8, seed=3)
        batch = mcmc_chain(EnsembleDims(3, 4), cfg)
        assert len(batch) == 777
        assert batch.spectra.shape == (777, 3)
        np.testing.assert_allclose(batch.spectra.sum(axis=1), 1.0, atol=1e-12)
        recomputed = [entropy(Spectrum(row)) for row in batch.spectra[:50]]
        np.testing.assert_allclose(batch.entropies[:50], recomputed, atol=1e-12)
        assert batch.provenance.backend == "mcmc"
        assert batch.provenance.dims == EnsembleDims(3, 4)

    def test_m1_marginal_is_gamma(self):
        cfg = ChainConfig(samples=40000, burn_in=1000, thinning=10, chain_count=50, seed=7)
        batch = mcmc_chain(EnsembleDims(1, 1), cfg)
        ks = stats.kstest(batch.thetas, "gamma", args=(0.5,))
        assert ks.pvalue > 0.01
        assert np.all(batch.entropies == 0.0)

    def test_mean_entropy_2_2(self):
        cfg = ChainConfig(samples=60000, burn_in=2000, thinning=10, chain_count=60, seed=11)
        batch = mcmc_chain(EnsembleDims(2, 2), cfg)
        st = k_statistics(batch.entropies)
        assert abs(st.k1 - K1_22) <= 4 * st.se1

    def test_entropies_T_identity(self):
        cfg = ChainConfig(samples=500, burn_in=200, thinning=2, chain_count=5, seed=13)
        batch = mcmc_chain(EnsembleDims(2, 2), cfg)
        x = batch.spectra * batch.thetas[:, None]
        direct = (x * np.log(x)).sum(axis=1)
        np.testing.assert_allclose(batch.entropies_T(), direct, rtol=1e-10)

    def test_statistical_match_4_6(self):
        from bureshall.cumulants import kappa2, kappa3

        dims = EnsembleDims(4, 6)
        cfg = ChainConfig(samples=200_000, burn_in=2000, thinning=10,
                          chain_count=100, seed=53)
        st = k_statistics(mcmc_chain(dims, cfg).entropies)
        for value, se, ref in (
            (st.k1, st.se1, float(kappa1(dims))),
            (st.k2, st.se2, float(kappa2(dims))),
            (st.k3, st.se3, float(kappa3(dims))),
        ):
            assert abs(value - ref) <= 4 * se


class TestMatrixModel:
    def test_single_draw(self):
        spec = sample_matrix_model(3, seed=21)
        assert spec.lam.shape == (3,)
        assert spec.lam.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.diff(spec.lam) <= 0)  # sorted descending

    @pytest.mark.parametrize("m,nsamp,seed_pair", [(2, 60000, (23, 29)), (3, 40000, (43, 47))])
    def test_batch_matches_mcmc_distribution(self, m, nsamp, seed_pair):
        mat = sample_matrix_model_batch(m, nsamp, seed=seed_pair[0])
        cfg = ChainConfig(samples=nsamp, burn_in=2000, thinning=30, chain_count=60,
                          seed=seed_pair[1])
        mc = mcmc_chain(EnsembleDims(m, m), cfg)
        ks = stats.ks_2samp(mat.entropies, mc.entropies)
        assert ks.pvalue > 0.01

    def test_batch_mean_matches_formula(self):
        batch = sample_matrix_model_batch(2, 60000, seed=31)
        st = k_statistics(batch.entropies)
        assert abs(st.k1 - K1_22) <= 4 * st.se1

    def test_validation(self):
        with pytest.raises(ValueError):
            sample_matrix_model_batch(0, 5, seed=1)
        with pytest.raises(ValueError):
            sample_matrix_model_batch(2, 0, seed=1)


class TestTraceLawAndIndependence:
    def test_theta_gamma_and_uncorrelated(self):
        dims = EnsembleDims(2, 2)
        n = 30000
        cfg = ChainConfig(samples=n, burn_in=2000, thinning=20, chain_count=60, seed=37)
        batch = mcmc_chain(dims, cfg)
        ks = stats.kstest(batch.thetas, "gamma", args=(float(dims.d),))
        assert ks.pvalue > 0.01
        r = np.corrcoef(batch.thetas, batch.entropies)[0, 1]
        assert abs(r) < 4 / math.sqrt(n)


class TestCsv:
    def test_round_trip(self, tmp_path):
        cfg = ChainConfig(samples=200, burn_in=100, thinning=2, chain_count=4, seed=41)
        batch = mcmc_chain(EnsembleDims(2, 3), cfg)
        path = tmp_path / "samples.csv"
        write_sample_csv(batch, str(path))
        header = path.read_text().splitlines()[0]
        assert header == "chain,step,theta,S,lambda_1,lambda_2"
        chain, step, theta, s, lam = read_sample_csv(str(path))
        np.testing.assert_array_equal(chain, batch.chain_index)
        np.testing.assert_array_equal(step, batch.step_index)
        np.testing.assert_array_equal(theta, batch.thetas)  # exact round-trip
        np.testing.assert_array_equal(s, batch.entropies)
        np.testing.assert_array_equal(lam, batch.spectra)
