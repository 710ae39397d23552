"""
Fourier transforms of strength fields, ``sigma_hat(gamma) = int e^{-i gamma.x}
sigma(x) dx``. Both transforms below are callables taking a batch of
frequencies of shape ``(..., d)``.
"""

import numpy as np

from sourcelab.quadrature import fourier_sum


class GaussianBumpTransform(object):
    """
    Closed-form transform of an (unclamped) Gaussian bump.

    Args:
        center (array-like): bump center
        width (float): standard width a
        amplitude (float): peak value for scalar bumps
        matrix (Optional[array-like]): constant matrix for matrix bumps; takes
            the place of ``amplitude``
    """

    def __init__(self, center, width, amplitude=1.0, matrix=None):
        self.center = np.asarray(center, dtype=float)
        self.d = self.center.shape[0]
        self.width = float(width)
        self.amplitude = float(amplitude)
        self.matrix = None if matrix is None else np.asarray(matrix, dtype=float)

    @property
    def is_matrix(self):
        return self.matrix is not None

    def scalar(self, gammas):
        gammas = np.asarray(gammas, dtype=float)
        a = self.width
        envelope = (2.0 * np.pi * a ** 2) ** (self.d / 2.0) * np.exp(
            -0.5 * a ** 2 * np.sum(gammas ** 2, axis=-1)
        )
        return envelope * np.exp(-1j * np.dot(gammas, self.center))

    def __call__(self, gammas):
        values = self.scalar(gammas)
        if self.matrix is None:
            return self.amplitude * values
        return values[..., None, None] * self.matrix


class QuadratureTransform(object):
    """Transform of a gridded strength by direct summation over the nodes."""

    def __init__(self, strength):
        self.strength = strength
        self.d = strength.grid.d

    @property
    def is_matrix(self):
        return self.strength.is_matrix

    def __call__(self, gammas):
        gammas = np.asarray(gammas, dtype=float)
        flat = gammas.reshape(-1, self.d)
        values = fourier_sum(self.strength.grid, self.strength.values, flat)
        return values.reshape(gammas.shape[:-1] + values.shape[1:])
