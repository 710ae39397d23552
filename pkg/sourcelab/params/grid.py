from dataclasses import dataclass

import numpy as np

from sourcelab import settings
from sourcelab.errors import InvalidGrid
from sourcelab.utils import is_power_of_two


@dataclass(frozen=True)
class SpatialGrid(object):
    """
    Uniform axis-aligned grid on the box ``[-L/2, L/2)^d``.

    Nodes sit at ``x_j = -L/2 + j*h`` with ``h = L/N``, so the origin is a
    node and the grid is periodic with period ``L``. Nodal arrays put the
    spatial axes first and any channel axes after them.

    Args:
        d (int): spatial dimension, 2 or 3
        points (int): nodes per axis, a power of two
        half_width (float): L/2, at least 1 so the box covers the unit ball
    """

    d: int
    points: int = settings.GRID_POINTS
    half_width: float = settings.GRID_HALF_WIDTH

    def __post_init__(self):
        if self.d not in (2, 3):
            raise InvalidGrid("grid dimension must be 2 or 3, got {}".format(self.d))
        if not is_power_of_two(int(self.points)):
            raise InvalidGrid(
                "points per axis must be a power of two, got {}".format(self.points)
            )
        if not self.half_width >= 1.0:
            raise InvalidGrid(
                "half width {} does not cover the unit ball".format(self.half_width)
            )

    @property
    def length(self):
        return 2.0 * self.half_width

    @property
    def spacing(self):
        return self.length / self.points

    @property
    def nyquist(self):
        """Largest wavenumber the grid resolves, ``pi / h``."""
        return np.pi / self.spacing

    @property
    def cell_volume(self):
        return self.spacing ** self.d

    @property
    def shape(self):
        return (self.points,) * self.d

    @property
    def axis(self):
        return -self.half_width + self.spacing * np.arange(self.points)

    def nodes(self):
        """Node coordinates, shape ``(N, ..., N, d)``."""
        mesh = np.meshgrid(*([self.axis] * self.d), indexing="ij")
        return np.stack(mesh, axis=-1)

    def radii(self):
        return np.linalg.norm(self.nodes(), axis=-1)

    def unit_ball_mask(self):
        return self.radii() <= 1.0

    def wavenumbers(self):
        """Signed FFT wavenumbers along one axis, ``2*pi*fftfreq(N, h)``."""
        return 2.0 * np.pi * np.fft.fftfreq(self.points, d=self.spacing)

    def mode_vectors(self):
        """Wavevectors of every FFT mode, shape ``(N, ..., N, d)``."""
        mesh = np.meshgrid(*([self.wavenumbers()] * self.d), indexing="ij")
        return np.stack(mesh, axis=-1)

    def mode_norms(self):
        return np.linalg.norm(self.mode_vectors(), axis=-1)

    def negated_mode_index(self):
        """Per-axis index of ``-q mod N``."""
        return (-np.arange(self.points)) % self.points

    def to_dict(self):
        return {"d": self.d, "points": self.points, "half_width": self.half_width}

    @classmethod
    def from_dict(cls, data):
        return cls(
            d=int(data["d"]),
            points=int(data["points"]),
            half_width=float(data["half_width"]),
        )
