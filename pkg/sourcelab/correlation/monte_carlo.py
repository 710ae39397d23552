"""
Monte Carlo estimation of far-field correlations.

Estimates are folds over realizations that keep running sums of the
products and of their squared moduli; folds merge associatively, so batches
may be computed independently and merged in a fixed order.
"""

import numpy as np

from cdislogging import get_logger

from sourcelab.correlation.records import CorrelationRecord, Pathway
from sourcelab.errors import DimensionMismatch, EnsembleTooSmall
from sourcelab.farfield.patterns import FarFieldSample, channel_values, farfield_channels

logger = get_logger(__name__)


class CorrelationAccumulator(object):
    """
    Running sums for ``E[u(x) u(y)^T]`` (no conjugation).

    Args:
        vector (bool): samples are d-vectors and products are outer products
    """

    def __init__(self, vector=False):
        self.vector = vector
        self.count = 0
        self.total = None
        self.total_sq = None

    def _fold(self, products, count):
        if self.total is None:
            self.total = np.zeros(products.shape[1:], dtype=complex)
            self.total_sq = np.zeros(products.shape[1:], dtype=float)
        self.total += np.sum(products, axis=0)
        self.total_sq += np.sum(np.abs(products) ** 2, axis=0)
        self.count += count

    def add(self, u_x, u_y):
        """
        Fold in a batch of paired samples.

        Args:
            u_x, u_y (np.ndarray):
                shape ``(B, ...)``; for vector data the last axis holds the
                components and products become outer products
        """
        u_x = np.asarray(u_x, dtype=complex)
        u_y = np.asarray(u_y, dtype=complex)
        if u_x.shape != u_y.shape:
            raise DimensionMismatch(
                "paired samples have shapes {} and {}".format(u_x.shape, u_y.shape)
            )
        if self.vector:
            products = np.einsum("...i,...j->...ij", u_x, u_y)
        else:
            products = u_x * u_y
        self._fold(products, u_x.shape[0])
        return self

    def add_grid(self, u_x, u_y):
        """
        Fold in all direction pairs at once: ``u_x`` of shape ``(B, M[, d])``
        and ``u_y`` of shape ``(B, P[, d])`` give sums of shape
        ``(M, P[, d, d])``.
        """
        u_x = np.asarray(u_x, dtype=complex)
        u_y = np.asarray(u_y, dtype=complex)
        if self.vector:
            total = np.einsum("rmi,rpj->mpij", u_x, u_y)
            total_sq = np.einsum("rmi,rpj->mpij", np.abs(u_x) ** 2, np.abs(u_y) ** 2)
        else:
            total = np.einsum("rm,rp->mp", u_x, u_y)
            total_sq = np.einsum("rm,rp->mp", np.abs(u_x) ** 2, np.abs(u_y) ** 2)
        if self.total is None:
            self.total = np.zeros(total.shape, dtype=complex)
            self.total_sq = np.zeros(total.shape, dtype=float)
        self.total += total
        self.total_sq += total_sq.real
        self.count += u_x.shape[0]
        return self

    def merge(self, other):
        """Combine two accumulators into a new one."""
        merged = CorrelationAccumulator(self.vector)
        for part in (self, other):
            if part.total is None:
                continue
            if merged.total is None:
                merged.total = part.total.copy()
                merged.total_sq = part.total_sq.copy()
            else:
                merged.total = merged.total + part.total
                merged.total_sq = merged.total_sq + part.total_sq
            merged.count += part.count
        return merged

    def mean(self):
        self._require_samples()
        return self.total / self.count

    def stderr(self):
        """Per-entry sample standard deviation of the products over ``sqrt(n)``."""
        self._require_samples()
        mean = self.total / self.count
        spread = (self.total_sq - self.count * np.abs(mean) ** 2) / (self.count - 1)
        return np.sqrt(np.clip(spread, 0.0, None) / self.count)

    def _require_samples(self):
        if self.count < 2:
            raise EnsembleTooSmall(
                "correlation estimates need at least 2 realizations, got {}".format(
                    self.count
                )
            )

    def record(self, x_hat, y_hat, k, branch="scalar"):
        stderr = self.stderr()
        mean = self.mean()
        return CorrelationRecord(
            np.asarray(x_hat, dtype=float),
            np.asarray(y_hat, dtype=float),
            float(k),
            mean if mean.ndim else complex(mean),
            self.count,
            stderr if stderr.ndim else float(stderr),
            Pathway.MONTE_CARLO,
            branch,
        )


def _sample_values(samples):
    values = [s.value if isinstance(s, FarFieldSample) else s for s in samples]
    return np.asarray(values, dtype=complex)


def mc_correlation(samples_x, samples_y, x_hat, y_hat, k, branch="scalar"):
    """
    Sample mean of ``u(x) u(y)`` (or ``u(x) u(y)^T``) over an ensemble.

    Args:
        samples_x, samples_y:
            one far-field value per realization at ``x_hat`` and ``y_hat``,
            as arrays or ``FarFieldSample`` lists

    Raises:
        EnsembleTooSmall: fewer than 2 realizations
    """
    u_x = _sample_values(samples_x)
    u_y = _sample_values(samples_y)
    accumulator = CorrelationAccumulator(vector=u_x.ndim == 2)
    accumulator.add(u_x, u_y)
    return accumulator.record(x_hat, y_hat, k, branch)


def ensemble_correlation_grid(ensemble, branch):
    """
    Mean and standard error of the correlation over every pair of directions
    of a ``FarFieldEnsemble``.

    Return:
        Tuple[np.ndarray, np.ndarray]: shapes ``(M, M[, d, d])``
    """
    values = ensemble.values[branch]
    accumulator = CorrelationAccumulator(vector=values.ndim == 3)
    accumulator.add_grid(values, values)
    return accumulator.mean(), accumulator.stderr()


class MonteCarloPairSupplier(object):
    """
    Correlation values at arbitrary direction pairs from a fixed set of
    realizations, folded in batches of ``batch_size`` realizations.
    """

    def __init__(self, model, realizations, k, batch_size=64):
        if len(realizations) < 2:
            raise EnsembleTooSmall(
                "need at least 2 realizations, got {}".format(len(realizations))
            )
        self.model = model
        self.realizations = list(realizations)
        self.k = float(k)
        self.batch_size = int(batch_size)
        self.channels = {c.branch: c for c in farfield_channels(model, k)}

    def accumulate(self, x_hats, y_hats, branch):
        channel = self.channels[branch]
        accumulators = []
        for start in range(0, len(self.realizations), self.batch_size):
            batch = self.realizations[start:start + self.batch_size]
            u_x = channel_values(channel, batch, x_hats)
            u_y = channel_values(channel, batch, y_hats)
            accumulators.append(
                CorrelationAccumulator(self.model.is_vector).add(u_x, u_y)
            )
        total = accumulators[0]
        for part in accumulators[1:]:
            total = total.merge(part)
        return total

    def __call__(self, x_hats, y_hats, branch):
        return self.accumulate(x_hats, y_hats, branch).mean()
