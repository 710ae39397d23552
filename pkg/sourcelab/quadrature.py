"""
Direct (non-gridded) Fourier sums between a spatial grid and arbitrary
frequencies. Both directions use the separable structure of the grid: one
phase matrix per axis, contracted one axis at a time.
"""

import numpy as np

from sourcelab import settings


def _phase_matrices(frequencies, axis, sign):
    return [
        np.exp(sign * 1j * np.outer(frequencies[:, a], axis))
        for a in range(frequencies.shape[1])
    ]


def fourier_sum(grid, values, frequencies, chunk=None):
    """
    Trapezoidal quadrature of ``int e^{-i w.y} f(y) dy`` over the grid.

    Args:
        grid (SpatialGrid)
        values (np.ndarray):
            nodal values of shape ``grid.shape + channels``; channels may hold
            vector components, matrix entries or stacked realizations
        frequencies (np.ndarray): shape ``(M, d)``

    Return:
        np.ndarray: complex, shape ``(M,) + channels``
    """
    frequencies = np.atleast_2d(np.asarray(frequencies, dtype=float))
    chunk = chunk or settings.FREQUENCY_CHUNK
    channels = values.shape[grid.d:]
    out = np.empty((frequencies.shape[0],) + channels, dtype=complex)
    for start in range(0, frequencies.shape[0], chunk):
        block = frequencies[start:start + chunk]
        phases = _phase_matrices(block, grid.axis, -1.0)
        partial = np.tensordot(phases[0], values, axes=([1], [0]))
        for phase in phases[1:]:
            partial = np.einsum("mj,mj...->m...", phase, partial)
        out[start:start + chunk] = partial
    return grid.cell_volume * out


def fourier_synthesis(grid, gammas, coefficients, weight, chunk=None):
    """
    Evaluate ``weight * sum_g e^{i gamma_g.x} c_g`` at every grid node.

    Args:
        grid (SpatialGrid): output grid
        gammas (np.ndarray): shape ``(G, d)``
        coefficients (np.ndarray): shape ``(G,) + channels``
        weight (float): overall factor, e.g. the Riemann cell volume

    Return:
        np.ndarray: complex, shape ``grid.shape + channels``
    """
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    chunk = chunk or settings.SYNTHESIS_CHUNK
    letters = "abc"[:grid.d]
    subscripts = ",".join("g" + c for c in letters) + ",g...->" + letters + "..."
    channels = coefficients.shape[1:]
    out = np.zeros(grid.shape + channels, dtype=complex)
    for start in range(0, gammas.shape[0], chunk):
        block = gammas[start:start + chunk]
        phases = _phase_matrices(block, grid.axis, 1.0)
        out += np.einsum(
            subscripts, *phases, coefficients[start:start + chunk], optimize=True
        )
    return weight * out
