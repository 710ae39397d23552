import numpy as np

from sourcelab.params import SpatialGrid
from sourcelab.quadrature import fourier_sum, fourier_synthesis


def test_fourier_sum_matches_direct_sum(rng):
    """The separable sum equals the naive sum over every node."""
    grid = SpatialGrid(2, 16, 2.0)
    values = rng.standard_normal(grid.shape)
    frequencies = rng.uniform(-5.0, 5.0, size=(7, 2))
    nodes = grid.nodes().reshape(-1, 2)
    phases = np.exp(-1j * frequencies @ nodes.T)
    direct = grid.cell_volume * phases @ values.ravel()
    assert np.allclose(fourier_sum(grid, values, frequencies, chunk=3), direct)


def test_fourier_sum_keeps_channel_axes(rng):
    """Trailing channel axes are carried through."""
    grid = SpatialGrid(3, 8, 2.0)
    values = rng.standard_normal(grid.shape + (3, 3))
    out = fourier_sum(grid, values, np.zeros((2, 3)))
    assert out.shape == (2, 3, 3)
    assert np.allclose(out[0], grid.cell_volume * values.sum(axis=(0, 1, 2)))


def test_synthesis_of_single_pair_is_cosine():
    """A Hermitian pair of coefficients synthesizes a real cosine."""
    grid = SpatialGrid(2, 16, 2.0)
    gamma = np.array([[1.5, -0.5], [-1.5, 0.5]])
    field = fourier_synthesis(grid, gamma, np.array([0.5, 0.5]), 1.0)
    nodes = grid.nodes()
    expected = np.cos(nodes @ gamma[0])
    assert np.allclose(field.real, expected)
    assert np.allclose(field.imag, 0.0, atol=1e-12)
