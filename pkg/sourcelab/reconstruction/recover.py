"""
Pointwise inversion of the residual-free correlation formulas for the
Fourier coefficients of the strength.
"""

import numpy as np

from cdislogging import get_logger

from sourcelab.errors import SourceLabError
from sourcelab.farfield.patterns import beta
from sourcelab.params.model import ModelKind
from sourcelab.reconstruction.directions import directions_for_gammas
from sourcelab.reconstruction.elastic import recover_trace_hat_elastic_batch
from sourcelab.reconstruction.errors import FrequencyTooHigh

logger = get_logger(__name__)


def _check_radius(gamma, limit, name):
    norms = np.linalg.norm(np.atleast_2d(gamma), axis=-1)
    if np.any(norms > limit * (1.0 + 1e-12)):
        raise FrequencyTooHigh(
            "|gamma| = {:.6g} exceeds {} = {:.6g}".format(norms.max(), name, limit)
        )


def poly_recovery_scale(k, n, d, m):
    return n ** 2 / beta(d) ** 2 * k ** (m + 4 * n - d - 1)


def em_recovery_scale(k, m):
    return -(k ** (m - 2)) / beta(3) ** 2


def recover_sigma_hat_poly(value, gamma, k, n, d, m):
    """
    ``sigma_hat(gamma) = (n^2 / beta_d^2) k^{m+4n-d-1} F(x_hat, y_hat)``.

    Raises:
        FrequencyTooHigh: ``|gamma| > 2k``
    """
    _check_radius(gamma, 2.0 * k, "2k")
    return poly_recovery_scale(k, n, d, m) * np.asarray(value)


def recover_sigma_hat_em(matrix, gamma, k, m):
    """``sigma_hat(gamma) = -k^{m-2} beta_3^{-2} E[E_inf(x) E_inf(y)^T]``."""
    _check_radius(gamma, 2.0 * k, "2k")
    return em_recovery_scale(k, m) * np.asarray(matrix)


def recover_coefficients(model, gammas, k, m, supplier):
    """
    Recover the strength coefficients at every gamma.

    Args:
        model (WaveModel)
        gammas (np.ndarray): shape ``(G, d)``
        supplier (Callable):
            ``(x_hats, y_hats, branch) -> values`` correlation source, analytic,
            Monte Carlo or sampler oracle

    Return:
        np.ndarray:
            ``sigma_hat`` (polyharmonic, shape ``(G,)``), the coefficient matrix
            (electromagnetic, ``(G, 3, 3)``) or the trace coefficient (elastic,
            ``(G,)``)
    """
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    if model.kind is ModelKind.ELASTIC:
        return recover_trace_hat_elastic_batch(supplier, gammas, k, model, m)
    x_hats, y_hats, _ = directions_for_gammas(gammas, k)
    if model.kind is ModelKind.POLYHARMONIC:
        values = supplier(x_hats, y_hats, "scalar")
        return poly_recovery_scale(k, model.n, model.d, m) * values
    if model.kind is ModelKind.ELECTROMAGNETIC:
        values = supplier(x_hats, y_hats, "electric")
        return em_recovery_scale(k, m) * values
    raise SourceLabError("unknown model {}".format(model.kind))
