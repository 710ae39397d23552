from dataclasses import dataclass

import numpy as np

from sourcelab.reconstruction.errors import FrequencyTooHigh

#: relative slack on ``|gamma| <= 2k`` for rounding in the caller's gamma
RADIUS_SLACK = 1e-12


def orthogonal_units(gammas):
    """
    A unit vector orthogonal to each gamma: the canonical basis vector
    ``e_i`` least aligned with gamma, made orthogonal to it and normalized.
    ``e_1`` at ``gamma = 0``.
    """
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    count, d = gammas.shape
    norms = np.linalg.norm(gammas, axis=-1)
    units = np.zeros_like(gammas)
    nonzero = norms > 0
    units[nonzero] = gammas[nonzero] / norms[nonzero, None]
    choice = np.argmin(np.abs(units), axis=-1)
    basis = np.eye(d)[choice]
    along = np.sum(basis * units, axis=-1)
    d1 = basis - along[:, None] * units
    return d1 / np.linalg.norm(d1, axis=-1, keepdims=True)


@dataclass(frozen=True, eq=False)
class DirectionPair(object):
    """Directions with ``k (x_hat + y_hat) = gamma``, ``d1`` orthogonal to gamma."""

    gamma: np.ndarray
    k: float
    x_hat: np.ndarray
    y_hat: np.ndarray
    d1: np.ndarray


def directions_for_gammas(gammas, k):
    """
    Vectorized ``directions_for_gamma``.

    Return:
        Tuple[np.ndarray, np.ndarray, np.ndarray]: x_hat, y_hat, d1, each
        of shape ``(G, d)``
    """
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    norms = np.linalg.norm(gammas, axis=-1)
    if np.any(norms > 2.0 * k * (1.0 + RADIUS_SLACK)):
        raise FrequencyTooHigh(
            "|gamma| = {:.6g} exceeds 2k = {:.6g}".format(norms.max(), 2.0 * k)
        )
    d1 = orthogonal_units(gammas)
    root = np.sqrt(np.clip(4.0 * k * k - norms ** 2, 0.0, None))[:, None]
    x_hat = (gammas + root * d1) / (2.0 * k)
    y_hat = (gammas - root * d1) / (2.0 * k)
    return x_hat, y_hat, d1


def directions_for_gamma(gamma, k):
    """
    Unit directions ``x_hat = (gamma + sqrt(4k^2 - |gamma|^2) d1) / (2k)`` and
    ``y_hat = (gamma - sqrt(4k^2 - |gamma|^2) d1) / (2k)``.

    Raises:
        FrequencyTooHigh: ``|gamma| > 2k``
    """
    gamma = np.asarray(gamma, dtype=float)
    x_hat, y_hat, d1 = directions_for_gammas(gamma[None, :], k)
    return DirectionPair(gamma, float(k), x_hat[0], y_hat[0], d1[0])
