import numpy as np

from cdislogging import get_logger

from sourcelab.green.errors import DomainError, TargetInsideSupport
from sourcelab.green.kernels import polyharmonic_green

logger = get_logger(__name__)

#: smallest radius accepted by ``asymptote_residual``
MIN_ASYMPTOTE_RADIUS = 10.0


def near_field(f, targets, k, n, chunk=64):
    """
    Solution ``u(x) = -int G(x, y, k) f(y) dy`` of the polyharmonic equation at
    points outside the grid box, by trapezoidal quadrature over the nodes
    where ``f`` is nonzero.

    Args:
        f (FieldRealization): scalar or vector source; vector sources are
            solved componentwise
        targets (np.ndarray): shape ``(T, d)``
        k (float): wavenumber
        n (int): polyharmonic order

    Return:
        np.ndarray: complex, shape ``(T,)`` or ``(T, d)``

    Raises:
        TargetInsideSupport: a target lies in the closed grid box
    """
    grid = f.grid
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    if np.any(np.max(np.abs(targets), axis=-1) <= grid.half_width):
        raise TargetInsideSupport("near field targets must lie outside the grid box")

    values = f.values.reshape((-1,) + f.values.shape[grid.d:])
    nodes = grid.nodes().reshape(-1, grid.d)
    if values.ndim == 1:
        support = values != 0
    else:
        support = np.any(values != 0, axis=-1)
    nodes = nodes[support]
    values = values[support]

    out = np.zeros((targets.shape[0],) + values.shape[1:], dtype=complex)
    if nodes.shape[0] == 0:
        return out
    for start in range(0, targets.shape[0], chunk):
        block = targets[start:start + chunk]
        kernel = polyharmonic_green(block[:, None, :], nodes[None, :, :], k, n, grid.d)
        out[start:start + chunk] = -grid.cell_volume * np.tensordot(
            kernel, values, axes=([1], [0])
        )
    return out


def asymptote_residual(f, k, n, direction, radii):
    """
    Distance between the scaled near field and the far-field pattern along one
    direction,
    ``|R^{(d-1)/2} e^{-ikR} u(R x) - u_inf(x)|`` for every R in ``radii``.
    """
    from sourcelab.farfield.patterns import poly_farfield_values

    radii = np.asarray(radii, dtype=float)
    if np.any(radii < MIN_ASYMPTOTE_RADIUS):
        raise DomainError(
            "asymptotic residuals need radii >= {}".format(MIN_ASYMPTOTE_RADIUS)
        )
    d = f.grid.d
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    far = poly_farfield_values(f, k, n, direction[None, :])[0]
    near = near_field(f, radii[:, None] * direction[None, :], k, n)
    scale = radii ** (0.5 * (d - 1)) * np.exp(-1j * k * radii)
    if near.ndim > 1:
        scale = scale[:, None]
    residuals = np.abs(scale * near - far)
    if residuals.ndim > 1:
        residuals = np.linalg.norm(residuals, axis=-1)
    logger.debug("asymptote residuals {} at radii {}".format(residuals, radii))
    return residuals
