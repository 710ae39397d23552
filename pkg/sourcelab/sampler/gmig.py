"""
Spectral sampler for generalized microlocally isotropic Gaussian (GMIG)
sources.

The stationary part is synthesized on the periodic box by filtering white
noise ``W``::

    f~ = ifftn( fftn(W) * h^{-d/2} |xi|^{-m/2} ),   zero mode set to 0

whose covariance is ``L^{-d} sum_{xi != 0} |xi|^{-m} e^{i xi.(x-y)}``, the
Riemann sum of the continuum kernel ``(2 pi)^{-d} int |xi|^{-m} e^{i xi.(x-y)}
d xi`` on the mode lattice of spacing ``2 pi / L``. Equivalently each mode
carries amplitude ``(2 pi)^{-d/2} (2 pi / L)^{d/2} |xi|^{-m/2}``. The source
is then ``f = sqrt(sigma) f~`` (scalar) or ``f = Sigma^{1/2} f~`` (vector).
"""

from dataclasses import dataclass

import numpy as np

from cdislogging import get_logger

from sourcelab.errors import DimensionMismatch
from sourcelab.params.grid import SpatialGrid
from sourcelab.params.model import ModelKind
from sourcelab.sampler.rng import standard_normal

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class FieldRealization(object):
    """
    One sample of the source on a grid: a scalar per node or a d-vector per
    node (trailing axis).
    """

    grid: SpatialGrid
    values: np.ndarray
    seed: int = 0
    m: float = None
    projected: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape not in (self.grid.shape, self.grid.shape + (self.grid.d,)):
            raise DimensionMismatch(
                "realization of shape {} does not fit grid {}".format(
                    values.shape, self.grid.shape
                )
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def is_vector(self):
        return self.values.ndim == self.grid.d + 1

    def scaled(self, alpha):
        return FieldRealization(
            self.grid, alpha * self.values, self.seed, self.m, self.projected
        )


def spectral_filter(grid, m):
    """``h^{-d/2} |xi|^{-m/2}`` on the FFT mode lattice, zero at ``xi = 0``."""
    norms = grid.mode_norms()
    nonzero = norms > 0
    out = np.zeros(grid.shape)
    out[nonzero] = norms[nonzero] ** (-0.5 * m)
    return grid.spacing ** (-0.5 * grid.d) * out


def stationary_field(grid, m, seed, stream=0):
    """The stationary factor ``f~`` for one (seed, stream) key."""
    noise = standard_normal(seed, stream, grid.shape)
    return np.fft.ifftn(np.fft.fftn(noise) * spectral_filter(grid, m)).real


def _require_grid(spec, grid):
    if grid != spec.grid:
        raise DimensionMismatch("sampling grid differs from the strength grid")


def sample_scalar(spec, grid, seed):
    """
    One realization ``sqrt(sigma) f~`` of a scalar source.

    Raises:
        UnvalidatedSpec: spec was not passed through ``validate_source``
        DimensionMismatch: matrix strength, or grid differs from the strength's
    """
    spec.require_checked()
    _require_grid(spec, grid)
    if spec.strength.is_matrix:
        raise DimensionMismatch("sample_scalar needs a scalar strength")
    values = spec.strength.sqrt_values() * stationary_field(grid, spec.m, seed)
    return FieldRealization(grid, values, seed=seed, m=spec.m)


def sample_vector(spec, grid, seed):
    """
    One realization ``Sigma^{1/2} f~`` of a vector source; the d components
    of ``f~`` are independent, component ``c`` drawn from stream ``c``.
    """
    spec.require_checked()
    _require_grid(spec, grid)
    if not spec.strength.is_matrix:
        raise DimensionMismatch("sample_vector needs a matrix strength")
    root = spec.strength.sqrt_values()
    stationary = np.stack(
        [stationary_field(grid, spec.m, seed, stream=c) for c in range(grid.d)],
        axis=-1,
    )
    values = np.einsum("...ij,...j->...i", root, stationary)
    return FieldRealization(grid, values, seed=seed, m=spec.m)


def sample_ensemble(model, spec, grid, seeds, projected=False):
    """
    Realizations for every seed. ``projected`` applies the Leray projection
    after sampling (electromagnetic model only).
    """
    from sourcelab.sampler.leray import leray_project

    if projected and model.kind is not ModelKind.ELECTROMAGNETIC:
        raise DimensionMismatch("Leray projection only applies to the electromagnetic model")
    sample = sample_vector if model.is_vector else sample_scalar
    realizations = []
    for seed in seeds:
        realization = sample(spec, grid, seed)
        if projected:
            realization = leray_project(realization)
        realizations.append(realization)
    logger.debug("sampled {} realizations on {}".format(len(realizations), grid))
    return realizations


def stationary_pairing_variance(grid, m, phi, psi=None):
    """
    Exact covariance of ``<f~, phi>`` and ``<f~, psi>`` for the discrete
    stationary field, ``h^{2d} L^{-d} sum_{xi != 0} |xi|^{-m} Phi(xi)
    conj(Psi(xi))`` with ``Phi`` the FFT of ``phi``.
    """
    psi = phi if psi is None else psi
    weights = spectral_filter(grid, m) ** 2 * grid.spacing ** grid.d
    total = np.sum(weights * np.fft.fftn(phi) * np.conj(np.fft.fftn(psi)))
    return float(grid.cell_volume ** 2 * total.real / grid.length ** grid.d)


def sampler_variance_oracle(spec, phi, psi=None, components=(0, 0)):
    """
    Exact ``Cov(<f_i, phi>, <f_j, psi>)`` of the factorized sampler, residual
    symbol included.

    Args:
        spec (SourceSpec): validated source
        phi, psi (np.ndarray): test functions on the grid
        components (Tuple[int, int]): (i, j) for vector sources
    """
    psi = phi if psi is None else psi
    root = spec.strength.sqrt_values()
    grid = spec.grid
    if not spec.strength.is_matrix:
        return stationary_pairing_variance(grid, spec.m, phi * root, psi * root)
    i, j = components
    return sum(
        stationary_pairing_variance(
            grid, spec.m, phi * root[..., i, c], psi * root[..., j, c]
        )
        for c in range(grid.d)
    )
