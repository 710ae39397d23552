"""
Closed-form correlations with the residual symbol dropped. For a channel
with coefficient ``c``, wavenumber ``w`` and projector ``P``::

    E[u(x) u(y)^T] = c^2 w^{-m} P(x) sigma_hat(w (x + y)) P(y)
"""

import numpy as np

from sourcelab.correlation.records import CorrelationRecord, Pathway
from sourcelab.errors import SourceLabError
from sourcelab.farfield.patterns import farfield_channels
from sourcelab.params.model import WaveModel


def channel_correlation(channel, sigma_hat, m, x_hats, y_hats):
    """
    Analytic correlation of one channel at paired directions.

    Args:
        channel (FarFieldChannel)
        sigma_hat (Callable): strength transform, batched over frequencies
        m (float): covariance order
        x_hats, y_hats (np.ndarray): shape ``(..., d)``

    Return:
        np.ndarray: shape ``(...)`` or ``(..., d, d)``
    """
    x_hats = np.asarray(x_hats, dtype=float)
    y_hats = np.asarray(y_hats, dtype=float)
    w = channel.wavenumber
    values = channel.coefficient ** 2 * w ** (-m) * sigma_hat(w * (x_hats + y_hats))
    left = channel.project(x_hats)
    if left is None:
        return values
    right = channel.project(y_hats)
    return np.einsum("...ij,...jk,...kl->...il", left, values, right)


def analytic_pair_values(model, sigma_hat, k, m, x_hats, y_hats):
    """Analytic correlation of every channel of ``model``, keyed by branch."""
    return {
        channel.branch: channel_correlation(channel, sigma_hat, m, x_hats, y_hats)
        for channel in farfield_channels(model, k)
    }


def analytic_correlation_grid(model, sigma_hat, k, m, directions):
    """Analytic correlation over all pairs of ``directions``, ``(M, M[, d, d])``."""
    directions = np.asarray(directions, dtype=float)
    x_hats = directions[:, None, :]
    y_hats = directions[None, :, :]
    x_hats, y_hats = np.broadcast_arrays(x_hats, y_hats)
    return analytic_pair_values(model, sigma_hat, k, m, x_hats, y_hats)


def _record(value, x_hat, y_hat, k, branch):
    value = np.asarray(value)
    return CorrelationRecord(
        np.asarray(x_hat, dtype=float),
        np.asarray(y_hat, dtype=float),
        float(k),
        value if value.ndim else complex(value),
        0,
        0.0,
        Pathway.ANALYTIC,
        branch,
    )


def analytic_correlation_poly(sigma_hat, k, n, d, m, x_hat, y_hat):
    """``(beta_d^2 / n^2) k^{d+1-4n-m} sigma_hat(k (x + y))``."""
    channel = farfield_channels(WaveModel.polyharmonic(d, n), k)[0]
    value = channel_correlation(channel, sigma_hat, m, x_hat, y_hat)
    return _record(value, x_hat, y_hat, k, channel.branch)


def analytic_correlation_em(sigma_hat, k, m, x_hat, y_hat):
    """``-k^2 beta_3^2 k^{-m} sigma_hat(k (x + y))``."""
    channel = farfield_channels(WaveModel.electromagnetic(), k)[0]
    value = channel_correlation(channel, sigma_hat, m, x_hat, y_hat)
    return _record(value, x_hat, y_hat, k, channel.branch)


def analytic_correlation_elastic(sigma_hat, k, lam, mu, m, x_hat, y_hat, branch):
    """
    Compressional (``branch="p"``) or shear (``branch="s"``) correlation,
    ``beta_d^2 c^{d+2-m} k^{d-3-m} P(x) sigma_hat(c k (x + y)) P(y)``.
    """
    d = len(x_hat)
    channels = {c.branch: c for c in farfield_channels(WaveModel.elastic(d, lam, mu), k)}
    if branch not in channels:
        raise SourceLabError("elastic branch must be 'p' or 's', got {}".format(branch))
    value = channel_correlation(channels[branch], sigma_hat, m, x_hat, y_hat)
    return _record(value, x_hat, y_hat, k, branch)


class AnalyticPairSupplier(object):
    """Callable ``(x_hats, y_hats, branch) -> values`` on the analytic pathway."""

    def __init__(self, model, sigma_hat, k, m):
        self.model = model
        self.sigma_hat = sigma_hat
        self.k = float(k)
        self.m = m
        self.channels = {c.branch: c for c in farfield_channels(model, k)}

    def __call__(self, x_hats, y_hats, branch):
        return channel_correlation(
            self.channels[branch], self.sigma_hat, self.m, x_hats, y_hats
        )
