"""
Forward maps from a source to far-field patterns.

Every model's pattern is a sum of channels of the same shape,

    u_inf(x) = coefficient * P(x) * int e^{-i w x.y} f(y) dy,

with a scalar coefficient, a channel wavenumber ``w`` and a projector ``P``
(none, identity, ``x x^T`` or ``I - x x^T``). The ``e^{-i w x.y}`` sign is used
throughout the package.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from cdislogging import get_logger

from sourcelab.errors import DimensionMismatch, LameViolation
from sourcelab.params.model import ModelKind, WaveModel
from sourcelab.quadrature import fourier_sum

logger = get_logger(__name__)


def beta(d):
    """``beta_2 = e^{i pi/4} / sqrt(8 pi)``, ``beta_3 = 1 / (4 pi)``."""
    if d == 2:
        return np.exp(0.25j * np.pi) / np.sqrt(8.0 * np.pi)
    if d == 3:
        return 1.0 / (4.0 * np.pi) + 0j
    raise DimensionMismatch("dimension must be 2 or 3, got {}".format(d))


@dataclass(frozen=True)
class ElasticWavenumbers(object):
    """Compressional and shear wavenumbers ``k_p = c_p k < k_s = c_s k``."""

    k: float
    c_p: float
    c_s: float

    @classmethod
    def from_lame(cls, k, lam, mu):
        if not mu > 0 or not lam + mu > 0:
            raise LameViolation(
                "Lame constants need mu > 0 and lambda + mu > 0, got ({}, {})".format(
                    lam, mu
                )
            )
        return cls(float(k), (lam + 2.0 * mu) ** -0.5, mu ** -0.5)

    @property
    def k_p(self):
        return self.c_p * self.k

    @property
    def k_s(self):
        return self.c_s * self.k


@dataclass(frozen=True)
class FarFieldChannel(object):
    branch: str
    coefficient: complex
    wavenumber: float
    projector: str = "none"

    def project(self, directions):
        """Projector matrices at each direction, or None for scalar channels."""
        directions = np.asarray(directions, dtype=float)
        if self.projector == "none":
            return None
        d = directions.shape[-1]
        identity = np.broadcast_to(np.eye(d), directions.shape[:-1] + (d, d))
        if self.projector == "identity":
            return identity
        longitudinal = directions[..., :, None] * directions[..., None, :]
        if self.projector == "longitudinal":
            return longitudinal
        return identity - longitudinal

    def apply(self, directions, transforms):
        """
        Turn source transforms ``V(w x)`` (leading axis over directions) into
        pattern values.
        """
        projectors = self.project(directions)
        if projectors is None:
            return self.coefficient * transforms
        return self.coefficient * np.einsum("mij,mj...->mi...", projectors, transforms)


def farfield_channels(model, k):
    """The far-field channels of ``model`` at wavenumber ``k``."""
    d = model.d
    b = beta(d)
    if model.kind is ModelKind.POLYHARMONIC:
        n = model.n
        return [
            FarFieldChannel("scalar", -(b / n) * k ** (0.5 * (d + 1 - 4 * n)), k)
        ]
    if model.kind is ModelKind.ELECTROMAGNETIC:
        return [FarFieldChannel("electric", 1j * k * b, k, "identity")]
    waves = ElasticWavenumbers.from_lame(k, *model.lame)
    scale = k ** (0.5 * (d - 3))
    return [
        FarFieldChannel(
            "p", -b * waves.c_p ** (0.5 * (d + 2)) * scale, waves.k_p, "longitudinal"
        ),
        FarFieldChannel(
            "s", -b * waves.c_s ** (0.5 * (d + 2)) * scale, waves.k_s, "transverse"
        ),
    ]


def largest_wavenumber(model, k):
    """Largest channel wavenumber of ``model`` at ``k``."""
    return max(channel.wavenumber for channel in farfield_channels(model, k))


@dataclass(frozen=True, eq=False)
class FarFieldSample(object):
    direction: np.ndarray
    value: object
    k: float
    model: str
    branch: str = "scalar"


def fourier_at(f, w):
    """
    ``int e^{-i w.y} f(y) dy`` by direct summation over the grid, for one
    frequency ``(d,)`` or a batch ``(M, d)``.
    """
    w = np.asarray(w, dtype=float)
    values = fourier_sum(f.grid, f.values, w.reshape(-1, f.grid.d))
    if w.ndim == 1:
        return values[0]
    return values


def _stack(realizations):
    return np.stack([r.values for r in realizations], axis=-1)


def channel_values(channel, realizations, directions):
    """
    Pattern values of one channel for a batch of realizations.

    Return:
        np.ndarray: shape ``(R, M)`` or ``(R, M, d)``
    """
    grid = realizations[0].grid
    directions = np.asarray(directions, dtype=float)
    transforms = fourier_sum(grid, _stack(realizations), channel.wavenumber * directions)
    values = channel.apply(directions, transforms)
    return np.moveaxis(values, -1, 0)


def _unit_directions(directions):
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    norms = np.linalg.norm(directions, axis=-1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        raise DimensionMismatch("far-field directions must be unit vectors")
    return directions


def poly_farfield_values(f, k, n, directions):
    d = f.grid.d
    channel = farfield_channels(WaveModel.polyharmonic(d, n), k)[0]
    return channel_values(channel, [f], _unit_directions(directions))[0]


def poly_farfield(f, k, n, directions):
    """``u_inf(x) = -(beta_d / n) k^{(d+1-4n)/2} V(k x)`` per direction."""
    directions = _unit_directions(directions)
    values = poly_farfield_values(f, k, n, directions)
    return [
        FarFieldSample(x, v, k, ModelKind.POLYHARMONIC.value)
        for x, v in zip(directions, values)
    ]


def em_farfield(f, k, directions):
    """``E_inf(x) = i k beta_3 V(k x)`` per direction."""
    if f.grid.d != 3 or not f.is_vector:
        raise DimensionMismatch("electromagnetic far field needs a 3-vector source")
    directions = _unit_directions(directions)
    channel = farfield_channels(WaveModel.electromagnetic(), k)[0]
    values = channel_values(channel, [f], directions)[0]
    return [
        FarFieldSample(x, v, k, ModelKind.ELECTROMAGNETIC.value, "electric")
        for x, v in zip(directions, values)
    ]


def elastic_farfield(f, k, lam, mu, directions):
    """
    Compressional and shear patterns per direction, as ``(p, s)`` pairs of
    samples.
    """
    if not f.is_vector:
        raise DimensionMismatch("elastic far field needs a vector source")
    model = WaveModel.elastic(f.grid.d, lam, mu)
    directions = _unit_directions(directions)
    p_channel, s_channel = farfield_channels(model, k)
    p_values = channel_values(p_channel, [f], directions)[0]
    s_values = channel_values(s_channel, [f], directions)[0]
    kind = ModelKind.ELASTIC.value
    return [
        (FarFieldSample(x, p, k, kind, "p"), FarFieldSample(x, s, k, kind, "s"))
        for x, p, s in zip(directions, p_values, s_values)
    ]


@dataclass(frozen=True, eq=False)
class FarFieldEnsemble(object):
    """
    Far-field patterns of many realizations on one direction grid.

    ``values`` maps each branch name to an array of shape ``(R, M)`` (scalar)
    or ``(R, M, d)`` (vector).
    """

    model: WaveModel
    k: float
    directions: np.ndarray
    seeds: tuple
    values: dict

    @property
    def size(self):
        return len(self.seeds)

    def write_csv(self, path):
        d = self.directions.shape[1]
        header = ["seed", "direction"] + ["x{}".format(i + 1) for i in range(d)]
        columns = []
        for branch in sorted(self.values):
            if self.values[branch].ndim == 2:
                columns.append((branch, None))
            else:
                columns.extend((branch, c) for c in range(d))
        for branch, c in columns:
            name = branch if c is None else "{}{}".format(branch, c + 1)
            header.extend([name + "_re", name + "_im"])
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            for r, seed in enumerate(self.seeds):
                for j, direction in enumerate(self.directions):
                    row = [seed, j] + ["{!r}".format(float(x)) for x in direction]
                    for branch, c in columns:
                        value = self.values[branch][r, j]
                        value = value if c is None else value[c]
                        row.extend(["{!r}".format(value.real), "{!r}".format(value.imag)])
                    writer.writerow(row)
        return path

    def manifest(self):
        return {
            "model": self.model.to_dict(),
            "k": self.k,
            "directions": int(self.directions.shape[0]),
            "seeds": [int(s) for s in self.seeds],
            "branches": sorted(self.values),
        }

    def write_manifest(self, path):
        with open(path, "w") as f:
            json.dump(self.manifest(), f, indent=2, sort_keys=True)
        return path


def farfield_ensemble(model, realizations, k, directions):
    """Patterns of every realization for every channel of ``model``."""
    directions = _unit_directions(directions)
    values = {
        channel.branch: channel_values(channel, realizations, directions)
        for channel in farfield_channels(model, k)
    }
    logger.debug(
        "far field of {} realizations at k = {} on {} directions".format(
            len(realizations), k, directions.shape[0]
        )
    )
    return FarFieldEnsemble(
        model, float(k), directions, tuple(r.seed for r in realizations), values
    )
