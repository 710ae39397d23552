# pylint: disable=redefined-outer-name
"""
Define pytest fixtures.
"""

from addict import Dict
import numpy as np
import pytest

from sourcelab.params import (
    GaussianBumpTransform,
    SourceSpec,
    SpatialGrid,
    WaveModel,
    gaussian_bump_matrix_strength,
    gaussian_bump_strength,
    validate_source,
)

from tests import utils


#: bump used throughout: off-center, narrow enough to vanish on the unit sphere
BUMP = Dict(center2=(0.1, -0.1), center3=(0.1, 0.0, -0.1), width=0.15)

#: symmetric positive definite bump matrices
MATRIX2 = np.array([[2.0, 0.5], [0.5, 1.0]])
MATRIX3 = np.array([[2.0, 0.5, 0.0], [0.5, 1.0, 0.25], [0.0, 0.25, 1.5]])


@pytest.fixture(scope="session")
def grid2():
    return SpatialGrid(2, 64, 2.0)


@pytest.fixture(scope="session")
def grid3():
    return SpatialGrid(3, 32, 2.0)


@pytest.fixture(scope="session")
def poly_model():
    return WaveModel.polyharmonic(2, 1)


@pytest.fixture(scope="session")
def em_model():
    return WaveModel.electromagnetic()


@pytest.fixture(scope="session", params=[2, 3])
def elastic_model(request):
    return WaveModel.elastic(request.param, 2.0, 1.0)


@pytest.fixture(scope="session")
def bump2(grid2):
    return gaussian_bump_strength(grid2, BUMP.center2, BUMP.width)


@pytest.fixture(scope="session")
def bump3(grid3):
    return gaussian_bump_strength(grid3, BUMP.center3, BUMP.width)


@pytest.fixture(scope="session")
def matrix_bump3(grid3):
    return gaussian_bump_matrix_strength(grid3, BUMP.center3, BUMP.width, MATRIX3)


@pytest.fixture(scope="session")
def bump_hat2():
    return GaussianBumpTransform(BUMP.center2, BUMP.width)


@pytest.fixture(scope="session")
def matrix_bump_hat():
    def build(d):
        if d == 2:
            return GaussianBumpTransform(BUMP.center2, BUMP.width, matrix=MATRIX2)
        return GaussianBumpTransform(BUMP.center3, BUMP.width, matrix=MATRIX3)

    return build


@pytest.fixture(scope="session")
def poly_spec(poly_model, bump2):
    return validate_source(poly_model, SourceSpec(2.0, 3, bump2))


@pytest.fixture(scope="session")
def em_spec(em_model, matrix_bump3):
    return validate_source(em_model, SourceSpec(2.0, 4, matrix_bump3))


@pytest.fixture(scope="function")
def analytic_config_data():
    """Parsed analytic polyharmonic config, as an ``addict.Dict``."""
    return Dict(utils.read_yaml("resources/analytic_poly.yaml"))


@pytest.fixture(scope="function")
def rng():
    return np.random.default_rng(20240601)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: statistical checks over thousands of realizations"
    )
