import numpy as np

from sourcelab import settings
from sourcelab.errors import DimensionMismatch, EmptyInput


def circle_directions(count):
    """``count`` uniform angles starting at ``(1, 0)``; nested under doubling."""
    angles = 2.0 * np.pi * np.arange(count) / count
    return np.stack([np.cos(angles), np.sin(angles)], axis=-1)


def fibonacci_directions(count):
    """Fibonacci lattice on the unit sphere."""
    golden = (1.0 + 5.0 ** 0.5) / 2.0
    index = np.arange(count) + 0.5
    z = 1.0 - 2.0 * index / count
    rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = 2.0 * np.pi * index / golden
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)


def direction_grid(d, count=None):
    """
    Unit directions used to approximate suprema over the sphere: uniform
    angles for d = 2, a Fibonacci lattice for d = 3.
    """
    count = int(count or settings.DIRECTION_COUNTS[d])
    if count < 1:
        raise EmptyInput("direction grid needs at least one direction")
    if d == 2:
        return circle_directions(count)
    if d == 3:
        return fibonacci_directions(count)
    raise DimensionMismatch("dimension must be 2 or 3, got {}".format(d))


def with_antipodes(directions, tolerance=1e-12):
    """
    ``directions`` followed by every antipode ``-x`` not already present.
    """
    directions = np.asarray(directions, dtype=float)
    extra = []
    for direction in -directions:
        gaps = np.max(np.abs(directions - direction), axis=-1)
        if gaps.min() > tolerance:
            extra.append(direction)
    if not extra:
        return directions
    return np.concatenate([directions, np.array(extra)], axis=0)


def antipodal_pairs(directions, tolerance=1e-12):
    """
    Index pairs ``(i, j)`` with ``directions[j] == -directions[i]``, one for
    every direction whose antipode is in the set.
    """
    directions = np.asarray(directions, dtype=float)
    gaps = np.max(np.abs(directions[:, None, :] + directions[None, :, :]), axis=-1)
    return np.nonzero(gaps <= tolerance)


def direction_pairs(directions, include_antipodal=True):
    """
    All ordered pairs ``(x, y)`` of ``directions`` as two ``(P, d)`` arrays.
    With ``include_antipodal`` the antipodes are added first so the pair set
    contains ``(x, -x)`` for every ``x``.
    """
    if include_antipodal:
        directions = with_antipodes(directions)
    directions = np.asarray(directions, dtype=float)
    count = directions.shape[0]
    first, second = np.meshgrid(np.arange(count), np.arange(count), indexing="ij")
    return directions[first.ravel()], directions[second.ravel()]
