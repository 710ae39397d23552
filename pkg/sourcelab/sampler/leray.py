import numpy as np

from sourcelab.errors import DimensionMismatch
from sourcelab.sampler.gmig import FieldRealization


def projection_wavevectors(grid):
    """
    Wavevectors used by the discrete Leray projection. The Nyquist component
    of each axis is set to zero so that the modewise projector is even in
    ``xi`` and maps real fields to real fields.
    """
    wavenumbers = grid.wavenumbers()
    wavenumbers[grid.points // 2] = 0.0
    mesh = np.meshgrid(*([wavenumbers] * grid.d), indexing="ij")
    return np.stack(mesh, axis=-1)


def leray_project(realization):
    """
    Apply ``I - xi xi^T / |xi|^2`` to every Fourier mode of a 3-vector field;
    modes with ``xi = 0`` are left untouched.

    Raises:
        DimensionMismatch: not a vector realization in three dimensions
    """
    grid = realization.grid
    if grid.d != 3 or not realization.is_vector:
        raise DimensionMismatch("Leray projection needs a 3-vector realization")
    spatial = tuple(range(grid.d))
    spectrum = np.fft.fftn(realization.values, axes=spatial)
    xi = projection_wavevectors(grid)
    norms2 = np.sum(xi ** 2, axis=-1)
    nonzero = norms2 > 0
    divergence = np.sum(xi * spectrum, axis=-1)
    correction = np.zeros_like(spectrum)
    correction[nonzero] = (
        xi[nonzero] * (divergence[nonzero] / norms2[nonzero])[:, None]
    )
    values = np.fft.ifftn(spectrum - correction, axes=spatial).real
    return FieldRealization(
        grid, values, seed=realization.seed, m=realization.m, projected=True
    )
