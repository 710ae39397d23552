from dataclasses import dataclass

import numpy as np

from cdislogging import get_logger

from sourcelab import settings
from sourcelab.errors import DimensionMismatch, NotNonnegDefinite, SupportViolation
from sourcelab.params.grid import SpatialGrid

logger = get_logger(__name__)


def _readonly(values):
    values = np.array(values, dtype=float)
    values.flags.writeable = False
    return values


def eigenvalue_tolerance(values):
    """Absolute tolerance for nodal eigenvalues of a matrix field."""
    if values.size == 0:
        return 0.0
    norms = np.sqrt(np.sum(values ** 2, axis=(-2, -1)))
    return settings.EIGENVALUE_TOLERANCE * float(norms.max())


def psd_sqrt(values):
    """
    Nodal symmetric square root of a field of symmetric matrices.

    Eigenvalues within ``eigenvalue_tolerance`` below zero are clipped to
    zero; anything more negative raises ``NotNonnegDefinite``.
    """
    eigenvalues, vectors = np.linalg.eigh(values)
    tolerance = eigenvalue_tolerance(values)
    lowest = float(eigenvalues.min()) if eigenvalues.size else 0.0
    if lowest < -tolerance:
        raise NotNonnegDefinite(
            "strength matrix has eigenvalue {:.3e} below -{:.3e}".format(
                lowest, tolerance
            )
        )
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return np.einsum("...ik,...k,...jk->...ij", vectors, roots, vectors)


@dataclass(frozen=True, eq=False)
class StrengthField(object):
    """
    Strength of the source on a spatial grid: one non-negative value per node
    (scalar sources) or one symmetric d x d matrix per node (vector sources).

    Construction does not check non-negativity or support; that is the job of
    ``sourcelab.params.source.validate_source``.
    """

    grid: SpatialGrid
    values: np.ndarray

    def __post_init__(self):
        values = _readonly(self.values)
        scalar_shape = self.grid.shape
        matrix_shape = self.grid.shape + (self.grid.d, self.grid.d)
        if values.shape not in (scalar_shape, matrix_shape):
            raise DimensionMismatch(
                "strength values of shape {} do not fit grid {}".format(
                    values.shape, scalar_shape
                )
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid, matrix=False):
        shape = grid.shape + ((grid.d, grid.d) if matrix else ())
        return cls(grid, np.zeros(shape))

    @property
    def is_matrix(self):
        return self.values.ndim == self.grid.d + 2

    def __add__(self, other):
        if not isinstance(other, StrengthField):
            return NotImplemented
        if other.grid != self.grid or other.is_matrix != self.is_matrix:
            raise DimensionMismatch("cannot add strengths on different grids or shapes")
        return StrengthField(self.grid, self.values + other.values)

    def scaled(self, alpha):
        return StrengthField(self.grid, alpha * self.values)

    def trace(self):
        if not self.is_matrix:
            return self
        return StrengthField(self.grid, np.trace(self.values, axis1=-2, axis2=-1))

    def integral(self):
        """Quadrature of the field over the box (scalar or d x d matrix)."""
        axes = tuple(range(self.grid.d))
        return self.grid.cell_volume * np.sum(self.values, axis=axes)

    def pointwise_norm(self):
        if self.is_matrix:
            return np.sqrt(np.sum(self.values ** 2, axis=(-2, -1)))
        return np.abs(self.values)

    def l1_norm(self):
        return float(self.grid.cell_volume * np.sum(self.pointwise_norm()))

    def sup_norm(self):
        return float(self.pointwise_norm().max())

    def sqrt_values(self):
        """Nodal square root; the factor the sampler multiplies white noise by."""
        if self.is_matrix:
            return psd_sqrt(self.values)
        if self.values.min() < 0:
            raise NotNonnegDefinite("scalar strength has negative values")
        return np.sqrt(self.values)


def gaussian_profile(grid, center, width):
    center = np.asarray(center, dtype=float)
    if center.shape != (grid.d,):
        raise DimensionMismatch(
            "center {} is not a point in dimension {}".format(center, grid.d)
        )
    offsets = grid.nodes() - center
    return np.exp(-np.sum(offsets ** 2, axis=-1) / (2.0 * width ** 2))


def _clamp_to_unit_ball(grid, raw):
    mask = grid.unit_ball_mask()
    total = float(np.sum(raw))
    discarded = float(np.sum(raw[~mask]))
    if total > 0 and discarded / total > settings.CLAMP_MASS_TOLERANCE:
        raise SupportViolation(
            "clamping to the unit ball discards relative mass {:.3e}".format(
                discarded / total
            )
        )
    logger.debug("clamped bump, discarded relative mass {:.3e}".format(
        discarded / total if total > 0 else 0.0
    ))
    return np.where(mask, raw, 0.0)


def _check_bump(center, width):
    if not width > 0:
        raise SupportViolation("bump width must be positive, got {}".format(width))
    if np.linalg.norm(center) > 1.0:
        raise SupportViolation("bump center {} lies outside the unit ball".format(center))


def gaussian_bump_strength(grid, center, width, amplitude=1.0):
    """
    Scalar strength ``amplitude * exp(-|x - center|^2 / (2 width^2))``, set to
    exactly zero outside the closed unit ball.

    Raises:
        SupportViolation:
            if the center is outside the unit ball or the clamp throws away
            more than ``settings.CLAMP_MASS_TOLERANCE`` of the mass
    """
    center = np.asarray(center, dtype=float)
    _check_bump(center, width)
    raw = amplitude * gaussian_profile(grid, center, width)
    return StrengthField(grid, _clamp_to_unit_ball(grid, raw))


def gaussian_bump_matrix_strength(grid, center, width, matrix):
    """
    Matrix strength ``matrix * exp(-|x - center|^2 / (2 width^2))`` clamped to
    the unit ball; ``matrix`` must be symmetric non-negative definite.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (grid.d, grid.d):
        raise DimensionMismatch(
            "matrix of shape {} does not fit dimension {}".format(matrix.shape, grid.d)
        )
    if not np.allclose(matrix, matrix.T):
        raise NotNonnegDefinite("bump matrix is not symmetric")
    lowest = float(np.linalg.eigvalsh(matrix).min())
    if lowest < -settings.EIGENVALUE_TOLERANCE * np.linalg.norm(matrix):
        raise NotNonnegDefinite(
            "bump matrix has negative eigenvalue {:.3e}".format(lowest)
        )
    center = np.asarray(center, dtype=float)
    _check_bump(center, width)
    profile = _clamp_to_unit_ball(grid, gaussian_profile(grid, center, width))
    return StrengthField(grid, profile[..., None, None] * matrix)
