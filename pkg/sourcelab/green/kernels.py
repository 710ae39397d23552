from dataclasses import dataclass

import numpy as np

from cdislogging import get_logger

from sourcelab.green.errors import CoincidentPoints, DomainError
from sourcelab.green.hankel import hankel0

logger = get_logger(__name__)


@dataclass(frozen=True)
class SplitWavenumbers(object):
    """
    The n wavenumbers ``kappa_j = k e^{i pi j / n}`` splitting the
    polyharmonic resolvent into Helmholtz resolvents:

        1 / (|xi|^{2n} - k^{2n}) = sum_j w_j / (|xi|^2 - kappa_j^2),
        w_j = kappa_j^2 / (n k^{2n})
    """

    k: float
    n: int
    values: tuple

    @classmethod
    def from_order(cls, k, n):
        if k == 0:
            raise DomainError("wavenumber must be nonzero")
        if int(n) != n or n < 1:
            raise DomainError("order must be an integer >= 1, got {}".format(n))
        values = tuple(k * np.exp(1j * np.pi * j / n) for j in range(int(n)))
        return cls(float(k), int(n), values)

    @property
    def weights(self):
        scale = 1.0 / (self.n * self.k ** (2 * self.n))
        return tuple(scale * kappa ** 2 for kappa in self.values)


def split_wavenumbers(k, n):
    return SplitWavenumbers.from_order(k, n)


def resolvent_symbol(xi_norm, k, n):
    """Fourier symbol of ``((-Delta)^n - k^{2n})^{-1}``."""
    xi_norm = np.asarray(xi_norm, dtype=float)
    return 1.0 / (xi_norm ** (2 * n) - float(k) ** (2 * n))


def split_resolvent_symbol(xi_norm, k, n):
    """The same symbol assembled from the n Helmholtz resolvents."""
    xi2 = np.asarray(xi_norm, dtype=float) ** 2
    split = split_wavenumbers(k, n)
    return sum(
        weight / (xi2 - kappa ** 2) for weight, kappa in zip(split.weights, split.values)
    )


def _distances(x, y):
    r = np.linalg.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float), axis=-1)
    if np.any(r == 0):
        raise CoincidentPoints("Green's function is singular at coincident points")
    return r


def helmholtz_green(x, y, kappa, d):
    """
    Outgoing fundamental solution of ``-Delta - kappa^2``.

    d = 2: ``(i/4) H_0^(1)(kappa |x - y|)``; d = 3: ``e^{i kappa r} / (4 pi r)``.
    ``x`` and ``y`` broadcast against each other over leading axes.
    """
    r = _distances(x, y)
    if d == 2:
        return 0.25j * hankel0(kappa * r)
    if d == 3:
        return np.exp(1j * kappa * r) / (4.0 * np.pi * r)
    raise DomainError("dimension must be 2 or 3, got {}".format(d))


def polyharmonic_green(x, y, k, n, d):
    """
    Green's function of ``(-Delta)^n - k^{2n}``:
    ``(1 / (n k^{2n})) sum_j kappa_j^2 Phi_d(x, y, kappa_j)``.
    """
    split = split_wavenumbers(k, n)
    return sum(
        weight * helmholtz_green(x, y, kappa, d)
        for weight, kappa in zip(split.weights, split.values)
    )
