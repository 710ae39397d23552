from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from sourcelab.correlation import (
    AnalyticPairSupplier,
    analytic_correlation_elastic,
    analytic_correlation_poly,
)
from sourcelab.farfield import ElasticWavenumbers
from sourcelab.params import GaussianBumpTransform, WaveModel
from sourcelab.reconstruction import (
    ThetaSystem,
    directions_for_gamma,
    elastic_b_entries,
    recover_coefficients,
    recover_sigma_hat_em,
    recover_sigma_hat_poly,
    recover_trace_hat_elastic,
)
from sourcelab.reconstruction.elastic import elastic_frame
from sourcelab.reconstruction.errors import FrequencyTooHigh, ThetaSingular

from tests.utils import relative_error


def ball_samples(rng, d, radius, count):
    directions = rng.standard_normal((count, d))
    directions /= np.linalg.norm(directions, axis=-1, keepdims=True)
    return radius * rng.uniform(0.0, 1.0, size=(count, 1)) * directions


@pytest.mark.parametrize("d,n,m", [(2, 1, 2.0), (3, 1, 2.5), (2, 2, 1.0)])
def test_poly_identity(d, n, m, matrix_bump_hat, rng):
    """Recovering from analytic correlations returns the transform itself."""
    sigma_hat = GaussianBumpTransform(matrix_bump_hat(d).center, 0.15)
    model = WaveModel.polyharmonic(d, n)
    k = 12.0
    gammas = ball_samples(rng, d, 2.0 * k, 50)
    supplier = AnalyticPairSupplier(model, sigma_hat, k, m)
    recovered = recover_coefficients(model, gammas, k, m, supplier)
    assert relative_error(recovered, sigma_hat(gammas)) <= 1e-12


def test_em_identity(em_model, matrix_bump_hat, rng):
    sigma_hat = matrix_bump_hat(3)
    k, m = 9.0, 2.0
    gammas = ball_samples(rng, 3, 2.0 * k, 40)
    supplier = AnalyticPairSupplier(em_model, sigma_hat, k, m)
    recovered = recover_coefficients(em_model, gammas, k, m, supplier)
    assert recovered.shape == (40, 3, 3)
    assert relative_error(recovered, sigma_hat(gammas)) <= 1e-12


def test_pointwise_recovery():
    sigma_hat = GaussianBumpTransform((0.0, 0.0), 0.2)
    gamma = np.array([3.0, -1.0])
    pair = directions_for_gamma(gamma, 5.0)
    value = analytic_correlation_poly(sigma_hat, 5.0, 1, 2, 2.0, pair.x_hat, pair.y_hat).value
    assert np.isclose(recover_sigma_hat_poly(value, gamma, 5.0, 1, 2, 2.0), sigma_hat(gamma))
    with pytest.raises(FrequencyTooHigh):
        recover_sigma_hat_poly(1.0, [10.5, 0.0], 5.0, 1, 2, 2.0)
    with pytest.raises(FrequencyTooHigh):
        recover_sigma_hat_em(np.eye(3), [0.0, 0.0, 10.5], 5.0, 2.0)


@settings(max_examples=500, deadline=None)
@given(
    ratio=st.floats(0.0, 1.0),
    lam=st.floats(-0.9, 10.0),
    mu=st.floats(0.1, 10.0),
)
def test_theta_determinant(ratio, lam, mu):
    """``det Theta > 1/2`` for every ``|gamma| <= k_p``."""
    waves = ElasticWavenumbers.from_lame(3.0, lam * mu, mu)
    system = ThetaSystem.for_gamma(ratio * waves.k_p, waves)
    assert system.determinant > 0.5
    assert np.isclose(np.linalg.det(system.matrix), system.determinant)


def test_theta_determinant_at_the_edge():
    waves = ElasticWavenumbers.from_lame(4.0, 2.0, 1.0)
    assert np.isclose(ThetaSystem.for_gamma(waves.k_p, waves).determinant, 0.6875)


def test_theta_singular():
    with pytest.raises(ThetaSingular) as error:
        ThetaSystem(0.6, 0.8).solve([1.0, 2.0])
    assert error.value.code == 41


def test_theta_solve_batches(rng):
    """A batch of systems solves like each system on its own."""
    theta_p = rng.uniform(0.0, 0.8, 12)
    system = ThetaSystem(theta_p, 0.5 * theta_p)
    rhs = rng.normal(size=(12, 2)) + 1j * rng.normal(size=(12, 2))
    solved = system.solve(rhs)
    assert solved.shape == (12, 2)
    assert np.allclose(np.einsum("bij,bj->bi", system.matrix, solved), rhs, rtol=1e-12)
    for index in range(12):
        one = ThetaSystem(theta_p[index], 0.5 * theta_p[index]).solve(rhs[index])
        assert np.allclose(solved[index], one, rtol=1e-12)


def _elastic_correlations(sigma_hat, k, m):
    def p_corr(x, y):
        return analytic_correlation_elastic(sigma_hat, k, 2.0, 1.0, m, x, y, "p").value

    def s_corr(x, y):
        return analytic_correlation_elastic(sigma_hat, k, 2.0, 1.0, m, x, y, "s").value

    return p_corr, s_corr


@pytest.mark.parametrize("d", [2, 3])
def test_elastic_b_entries(d, matrix_bump_hat):
    """The probes read the diagonal of ``U^T sigma_hat U``."""
    sigma_hat = matrix_bump_hat(d)
    k, m = 10.0, d - 0.5
    gamma = np.array([1.5, -2.0, 0.5][:d])
    p_corr, s_corr = _elastic_correlations(sigma_hat, k, m)
    entries = elastic_b_entries(p_corr, s_corr, gamma, k, 2.0, 1.0, m, d)
    frame = [v for v in elastic_frame(gamma) if v is not None]
    matrix = sigma_hat(gamma)
    expected = [u[0] @ matrix @ u[0] for u in frame]
    assert np.allclose(entries, expected, rtol=1e-8)


@pytest.mark.parametrize("d", [2, 3])
def test_elastic_trace_identity(d, matrix_bump_hat, rng):
    """Trace recovery is exact up to rounding, including ``gamma = 0``."""
    sigma_hat = matrix_bump_hat(d)
    model = WaveModel.elastic(d, 2.0, 1.0)
    k, m = 16.0, d - 0.5
    k_p = ElasticWavenumbers.from_lame(k, 2.0, 1.0).k_p
    gammas = np.concatenate([np.zeros((1, d)), ball_samples(rng, d, k_p, 30)])
    supplier = AnalyticPairSupplier(model, sigma_hat, k, m)
    recovered = recover_coefficients(model, gammas, k, m, supplier)
    expected = np.trace(sigma_hat(gammas), axis1=-2, axis2=-1)
    assert relative_error(recovered, expected) <= 1e-8

    p_corr, s_corr = _elastic_correlations(sigma_hat, k, m)
    single = recover_trace_hat_elastic(p_corr, s_corr, np.zeros(d), k, 2.0, 1.0, m, d)
    assert np.isclose(single, expected[0], rtol=1e-8)


def test_elastic_frequency_limit(elastic_model, matrix_bump_hat):
    d = elastic_model.d
    supplier = AnalyticPairSupplier(elastic_model, matrix_bump_hat(d), 4.0, d - 0.5)
    gamma = np.zeros((1, d))
    gamma[0, 0] = 2.5
    with pytest.raises(FrequencyTooHigh):
        recover_coefficients(elastic_model, gamma, 4.0, d - 0.5, supplier)


def test_theta_determinant_bulk(rng):
    """Ten thousand random admissible draws of (gamma, lambda, mu)."""
    mu = rng.uniform(0.1, 10.0, 10000)
    lam = rng.uniform(-0.9, 10.0, 10000) * mu
    ratio = rng.uniform(0.0, 1.0, 10000)
    determinants = [
        ThetaSystem.for_gamma(r * waves.k_p, waves).determinant
        for r, waves in zip(
            ratio, (ElasticWavenumbers.from_lame(2.0, l, m) for l, m in zip(lam, mu))
        )
    ]
    assert min(determinants) > 0.5
