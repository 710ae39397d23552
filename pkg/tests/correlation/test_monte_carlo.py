# pylint: disable=redefined-outer-name
"""
Monte Carlo correlations against the exact moments of the sampler.
"""

import mock
import numpy as np
import pytest

from sourcelab.correlation import (
    CorrelationAccumulator,
    MonteCarloPairSupplier,
    SamplerCorrelationOracle,
    analytic_correlation_grid,
    estimate_residual_budget,
)
from sourcelab.correlation.statistics import correlation_prefactor
from sourcelab.errors import EnsembleTooSmall, UnvalidatedSpec
from sourcelab.farfield import direction_grid, farfield_ensemble, with_antipodes
from sourcelab.params import (
    GaussianBumpTransform,
    QuadratureTransform,
    SourceSpec,
    SpatialGrid,
    WaveModel,
    gaussian_bump_strength,
    validate_source,
)
from sourcelab.sampler.gmig import sample_ensemble
from sourcelab.utils import derive_seed, loglog_slope

from tests.conftest import BUMP

K = 16.0


@pytest.fixture(scope="module")
def model():
    return WaveModel.polyharmonic(2, 1)


@pytest.fixture(scope="module")
def spec(model):
    grid = SpatialGrid(2, 64, 2.0)
    strength = gaussian_bump_strength(grid, BUMP.center2, BUMP.width)
    return validate_source(model, SourceSpec(2.0, 3, strength))


@pytest.fixture(scope="module")
def directions():
    return with_antipodes(direction_grid(2, 10))


@pytest.fixture(scope="module")
def oracle(model, spec):
    return SamplerCorrelationOracle(model, spec)


def test_oracle_grid_matches_pairs(oracle, directions):
    grid = oracle.correlation_grid(K, directions)["scalar"]
    pairs = oracle.pair_values(K, directions[[0, 3]], directions[[5, 2]])["scalar"]
    assert np.allclose(pairs, [grid[0, 5], grid[3, 2]], rtol=1e-10)
    assert np.allclose(grid, grid.T, rtol=1e-10)


def test_oracle_antipodal_is_a_variance(bump3):
    """In 3D the coefficient is real, so ``E[u(x) u(-x)] = E|u(x)|^2 > 0``."""
    model = WaveModel.polyharmonic(3, 1)
    oracle = SamplerCorrelationOracle(
        model, validate_source(model, SourceSpec(2.0, 4, bump3))
    )
    x = direction_grid(3, 4)
    values = oracle.pair_values(6.0, x, -x)["scalar"]
    assert np.all(values.real > 0)
    assert np.allclose(values.imag, 0.0, atol=1e-12 * np.abs(values).max())


def test_oracle_needs_validated_spec(model, spec):
    with pytest.raises(UnvalidatedSpec):
        SamplerCorrelationOracle(model, SourceSpec(2.0, 3, spec.strength))


def test_residual_budget_is_finite(model, spec, oracle, directions):
    reference = analytic_correlation_grid(
        model, GaussianBumpTransform(BUMP.center2, BUMP.width), K, spec.m, directions
    )["scalar"]
    budget = estimate_residual_budget(
        oracle.correlation_grid(K, directions)["scalar"], reference, model, K, spec.m
    )
    assert np.isfinite(budget) and budget >= 0


def test_pair_supplier_batches_agree(model, spec, directions):
    """Batch size does not change the estimate."""
    realizations = sample_ensemble(model, spec, spec.grid, range(12))
    x, y = directions[:3], directions[3:6]
    one = MonteCarloPairSupplier(model, realizations, K, batch_size=5)
    two = MonteCarloPairSupplier(model, realizations, K, batch_size=12)
    assert np.allclose(one(x, y, "scalar"), two(x, y, "scalar"))
    with pytest.raises(EnsembleTooSmall):
        MonteCarloPairSupplier(model, realizations[:1], K)


def test_oracle_warns_once_when_aliasing(model, spec, directions):
    """Correlations past half the grid Nyquist wavenumber are flagged."""
    log = mock.MagicMock()
    oracle = SamplerCorrelationOracle(model, spec, logger=log)
    assert 2.0 * K <= spec.grid.nyquist
    oracle.correlation_grid(K, directions)
    assert not log.warning.called

    high = spec.grid.nyquist
    oracle.correlation_grid(high, directions)
    oracle.pair_values(high, directions[:2], directions[2:4])
    assert log.warning.call_count == 1
    assert oracle.aliased == {high}


@pytest.mark.slow
def test_monte_carlo_consistency(model, spec, oracle, directions):
    """
    At 4096 realizations at least 95% of 100 pair estimates sit within four
    standard errors of the sampler moments, and within four standard errors
    plus the factorization residual of the analytic correlation. The standard
    error decays like ``R^{-1/2}``.
    """
    seeds = [derive_seed(0, "sample", i) for i in range(4096)]
    batches = []
    for start in range(0, len(seeds), 512):
        realizations = sample_ensemble(model, spec, spec.grid, seeds[start:start + 512])
        batches.append(farfield_ensemble(model, realizations, K, directions).values["scalar"])
    samples = np.concatenate(batches)
    exact = oracle.correlation_grid(K, directions)["scalar"]
    analytic = analytic_correlation_grid(
        model, QuadratureTransform(spec.strength), K, spec.m, directions
    )["scalar"]
    assert exact.size == 100

    counts = (256, 1024, 4096)
    stderrs = []
    for count in counts:
        accumulator = CorrelationAccumulator().add_grid(samples[:count], samples[:count])
        mean, stderr = accumulator.mean(), accumulator.stderr()
        stderrs.append(np.median(stderr))
    assert abs(loglog_slope(counts, stderrs) + 0.5) <= 0.05

    assert np.mean(np.abs(mean - exact) <= 4.0 * stderr) >= 0.95

    budget = estimate_residual_budget(exact, analytic, model, K, spec.m)
    residual = budget * correlation_prefactor(model, K) * K ** (-(spec.m + 1))
    assert residual == pytest.approx(np.max(np.abs(exact - analytic)), rel=1e-10)
    assert np.mean(np.abs(mean - analytic) <= 4.0 * stderr + residual) >= 0.95
