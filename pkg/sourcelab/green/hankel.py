"""
Bessel functions of orders 0 and 1 and the Hankel functions built from them,
for complex arguments in the closed upper half plane.

For ``|z| <= settings.HANKEL_SWITCH`` the ascending power series are summed
(``settings.HANKEL_SERIES_TERMS`` terms; the series converge for all z and
at |z| = 8 the last term is below 1e-40). Beyond the switch the Hankel
large-argument expansion

    H_nu^(1,2)(z) ~ sqrt(2 / (pi z)) e^{+-i(z - nu pi/2 - pi/4)}
                    sum_k (+-i)^k a_k(nu) z^{-k}

is summed up to its smallest term, which at |z| = 8 leaves a relative error
near 1e-8. J and Y for large arguments come from ``(H1 + H2)/2`` and
``(H1 - H2)/(2i)``.
"""

import numpy as np

from sourcelab import settings
from sourcelab.green.errors import DomainError

EULER_GAMMA = 0.57721566490153286061


def _as_argument(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("Bessel functions of order 0 and 1 are singular at z = 0")
    if np.any(z.imag < 0):
        raise DomainError("arguments must lie in the closed upper half plane")
    return z


def _series_j0y0(z):
    quarter = -0.25 * z * z
    term = np.ones_like(z)
    j0 = np.ones_like(z)
    tail = np.zeros_like(z)
    harmonic = 0.0
    for k in range(1, settings.HANKEL_SERIES_TERMS):
        term = term * quarter / (k * k)
        harmonic += 1.0 / k
        j0 = j0 + term
        tail = tail + harmonic * term
    y0 = (2.0 / np.pi) * ((np.log(0.5 * z) + EULER_GAMMA) * j0 - tail)
    return j0, y0


def _series_j1y1(z):
    quarter = -0.25 * z * z
    term = 0.5 * z
    j1 = term.copy()
    # psi(k+1) + psi(k+2) at k = 0
    digammas = -2.0 * EULER_GAMMA + 1.0
    tail = digammas * term
    harmonic = 0.0
    for k in range(1, settings.HANKEL_SERIES_TERMS):
        term = term * quarter / (k * (k + 1))
        harmonic += 1.0 / k
        digammas = -2.0 * EULER_GAMMA + 2.0 * harmonic + 1.0 / (k + 1)
        j1 = j1 + term
        tail = tail + digammas * term
    y1 = (
        (2.0 / np.pi) * np.log(0.5 * z) * j1
        - 2.0 / (np.pi * z)
        - tail / np.pi
    )
    return j1, y1


def _asymptotic(nu, z, kind):
    """Large-argument expansion of H_nu^(kind)(z), kind 1 or 2."""
    sign = 1.0 if kind == 1 else -1.0
    mu = 4.0 * nu * nu
    total = np.ones_like(z)
    term = np.ones_like(z)
    smallest = np.ones(z.shape)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, settings.HANKEL_ASYMPTOTIC_TERMS):
        term = term * sign * 1j * (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        size = np.abs(term)
        active &= size < smallest
        smallest = np.where(active, size, smallest)
        total = total + np.where(active, term, 0.0)
    phase = np.exp(sign * 1j * (z - 0.5 * nu * np.pi - 0.25 * np.pi))
    return np.sqrt(2.0 / (np.pi * z)) * phase * total


def _evaluate(z, series, nu):
    z = _as_argument(z)
    small = np.abs(z) <= settings.HANKEL_SWITCH
    j = np.empty_like(z)
    y = np.empty_like(z)
    if np.any(small):
        j[small], y[small] = series(z[small])
    large = ~small
    if np.any(large):
        h1 = _asymptotic(nu, z[large], 1)
        h2 = _asymptotic(nu, z[large], 2)
        j[large] = 0.5 * (h1 + h2)
        y[large] = (h1 - h2) / 2j
    return j, y


def bessel_j0y0(z):
    """Return ``(J_0(z), Y_0(z))``."""
    return _evaluate(z, _series_j0y0, 0.0)


def bessel_j1y1(z):
    """Return ``(J_1(z), Y_1(z))``."""
    return _evaluate(z, _series_j1y1, 1.0)


def _hankel(z, series, nu):
    z = _as_argument(z)
    small = np.abs(z) <= settings.HANKEL_SWITCH
    out = np.empty_like(z)
    if np.any(small):
        j, y = series(z[small])
        out[small] = j + 1j * y
    if np.any(~small):
        out[~small] = _asymptotic(nu, z[~small], 1)
    return out


def hankel0(z):
    """
    Hankel function of the first kind and order zero, ``H_0^(1)(z)``.

    Raises:
        DomainError: ``z == 0`` or ``Im z < 0``
    """
    return _hankel(z, _series_j0y0, 0.0)


def hankel1(z):
    """Hankel function of the first kind and order one, ``H_1^(1)(z)``."""
    return _hankel(z, _series_j1y1, 1.0)
