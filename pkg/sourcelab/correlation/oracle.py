"""
Exact far-field correlations of the discrete factorized sampler.

With ``A`` the nodal square root of the strength and ``g_w(x) = e^{-i w.x}
A(x)``, the transform of a realization is ``V(w) = h^d sum_x g_w(x) f~(x)``
and, for the periodic stationary factor,

    E[V(w1) V(w2)^T] = L^{-d} sum_{q != 0} |xi_q|^{-m} D_{w1}(q) D_{w2}(-q)^T,
    D_w(q) = h^d e^{i xi_q . x_0} N^d ifftn(g_w)[q].

This includes the residual symbol the factorization induces, so Monte Carlo
estimates converge to these values and not to the residual-free formulas.
"""

import numpy as np

from cdislogging import get_logger

from sourcelab.farfield.patterns import farfield_channels

logger = get_logger(__name__)


class SamplerCorrelationOracle(object):
    """
    Args:
        model (WaveModel)
        spec (SourceSpec): validated source
        chunk (int): frequencies transformed per batch
    """

    def __init__(self, model, spec, chunk=32, logger=logger):
        self.model = model
        self.spec = spec.require_checked()
        self.grid = spec.grid
        self.chunk = chunk
        self.logger = logger
        self.root = spec.strength.sqrt_values()
        self.aliased = set()
        grid = self.grid
        norms = grid.mode_norms()
        weights = np.zeros(grid.shape)
        weights[norms > 0] = norms[norms > 0] ** (-spec.m)
        self.weights = weights
        indices = np.meshgrid(*([np.arange(grid.points)] * grid.d), indexing="ij")
        self.phase = (-1.0) ** np.sum(indices, axis=0)

    def _check_resolved(self, wavenumber):
        if 2.0 * wavenumber > self.grid.nyquist and wavenumber not in self.aliased:
            self.aliased.add(wavenumber)
            self.logger.warning(
                "2 * {:g} exceeds the grid Nyquist wavenumber {:g}; correlations "
                "alias".format(wavenumber, self.grid.nyquist)
            )

    def _negate_modes(self, array):
        negated = self.grid.negated_mode_index()
        for axis in range(1, self.grid.d + 1):
            array = np.take(array, negated, axis=axis)
        return array

    def mode_coefficients(self, frequencies):
        """
        ``D_w(q)`` for a batch of frequencies, shape ``(F, N, ..., N)`` for
        scalar sources and ``(F, N, ..., N, d, d)`` for vector sources (last
        two axes: component, noise stream).
        """
        grid = self.grid
        frequencies = np.atleast_2d(np.asarray(frequencies, dtype=float))
        nodes = grid.nodes()
        spatial = tuple(range(1, grid.d + 1))
        scale = grid.cell_volume * grid.points ** grid.d
        out = []
        for start in range(0, frequencies.shape[0], self.chunk):
            block = frequencies[start:start + self.chunk]
            waves = np.exp(-1j * np.tensordot(block, nodes, axes=([1], [-1])))
            if self.root.ndim == grid.d:
                g = waves * self.root
                phase = self.phase
            else:
                g = waves[..., None, None] * self.root
                phase = self.phase[..., None, None]
            out.append(scale * phase * np.fft.ifftn(g, axes=spatial))
        return np.concatenate(out, axis=0)

    def _moment_grid(self, coefficients_a, coefficients_b):
        """Second moments between two frequency batches, ``(A, B[, d, d])``."""
        negated = self._negate_modes(coefficients_b)
        d = self.grid.d
        size = self.grid.points ** d
        norm = self.grid.length ** (-d)
        weights = self.weights.reshape(-1)
        if coefficients_a.ndim == d + 1:
            a = coefficients_a.reshape(coefficients_a.shape[0], size)
            b = negated.reshape(negated.shape[0], size)
            return norm * (a * weights) @ b.T
        # (F, q, i, c) -> (F i, q c)
        a = coefficients_a.reshape((coefficients_a.shape[0], size, d, d))
        b = negated.reshape((negated.shape[0], size, d, d))
        left = np.transpose(a, (0, 2, 1, 3)).reshape(a.shape[0] * d, size * d)
        right = np.transpose(b, (0, 2, 1, 3)).reshape(b.shape[0] * d, size * d)
        moments = (left * np.repeat(weights, d)) @ right.T
        moments = moments.reshape(a.shape[0], d, b.shape[0], d)
        return norm * np.transpose(moments, (0, 2, 1, 3))

    def _moment_pairs(self, coefficients_a, coefficients_b):
        """Second moments between paired frequencies, ``(P[, d, d])``."""
        negated = self._negate_modes(coefficients_b)
        d = self.grid.d
        size = self.grid.points ** d
        norm = self.grid.length ** (-d)
        weights = self.weights.reshape(-1)
        count = coefficients_a.shape[0]
        if coefficients_a.ndim == d + 1:
            a = coefficients_a.reshape(count, size)
            b = negated.reshape(count, size)
            return norm * np.einsum("pq,q,pq->p", a, weights, b)
        a = coefficients_a.reshape(count, size, d, d)
        b = negated.reshape(count, size, d, d)
        return norm * np.einsum("pqic,q,pqjc->pij", a, weights, b)

    def transform_moments(self, w1, w2):
        """``E[V(w1) V(w2)^T]`` for paired frequency batches of shape ``(P, d)``."""
        return self._moment_pairs(self.mode_coefficients(w1), self.mode_coefficients(w2))

    def pair_values(self, k, x_hats, y_hats, branch=None):
        """Far-field correlations at paired directions, keyed by branch."""
        x_hats = np.atleast_2d(np.asarray(x_hats, dtype=float))
        y_hats = np.atleast_2d(np.asarray(y_hats, dtype=float))
        out = {}
        for channel in farfield_channels(self.model, k):
            if branch is not None and channel.branch != branch:
                continue
            w = channel.wavenumber
            self._check_resolved(w)
            moments = self.transform_moments(w * x_hats, w * y_hats)
            left = channel.project(x_hats)
            if left is not None:
                right = channel.project(y_hats)
                moments = np.einsum("pij,pjk,pkl->pil", left, moments, right)
            out[channel.branch] = channel.coefficient ** 2 * moments
        return out

    def correlation_grid(self, k, directions):
        """Far-field correlations over all pairs of ``directions``."""
        directions = np.asarray(directions, dtype=float)
        out = {}
        for channel in farfield_channels(self.model, k):
            self._check_resolved(channel.wavenumber)
            coefficients = self.mode_coefficients(channel.wavenumber * directions)
            moments = self._moment_grid(coefficients, coefficients)
            projectors = channel.project(directions)
            if projectors is not None:
                moments = np.einsum("aij,abjk,bkl->abil", projectors, moments, projectors)
            out[channel.branch] = channel.coefficient ** 2 * moments
        self.logger.debug(
            "sampler oracle at k = {} over {} directions".format(k, directions.shape[0])
        )
        return out

    def supplier(self, k):
        """Callable ``(x_hats, y_hats, branch) -> values`` at wavenumber ``k``."""

        def values(x_hats, y_hats, branch):
            return self.pair_values(k, x_hats, y_hats, branch)[branch]

        return values
