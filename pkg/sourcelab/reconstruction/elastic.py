"""
Trace recovery for the elastic model.

Neither far-field branch sees the full coefficient matrix: the compressional
branch is sandwiched by ``x x^T`` and the shear branch by ``I - x x^T``. In
the frame ``U = [gamma_hat, nu_1, (nu_2)]`` write ``B = U^T sigma_hat U``.
The compressional probe ``x_p^T sigma_hat y_p`` and the shear probe
``rho_1^T sigma_hat rho_2`` give two equations in ``b_11`` and ``b_22``
(the Theta system); in three dimensions ``b_33 = nu_2^T sigma_hat nu_2``
comes straight from the shear branch. Near ``gamma = 0`` antipodal
probes along the canonical basis read the diagonal of ``sigma_hat(0)``.
"""

from dataclasses import dataclass

import numpy as np

from cdislogging import get_logger

from sourcelab import settings
from sourcelab.farfield.patterns import ElasticWavenumbers, beta
from sourcelab.params.model import WaveModel
from sourcelab.reconstruction.directions import orthogonal_units
from sourcelab.reconstruction.errors import FrequencyTooHigh, ThetaSingular

logger = get_logger(__name__)

#: smallest |det Theta| accepted before giving up on the solve
SINGULAR_DETERMINANT = 1e-14


@dataclass(frozen=True)
class ThetaSystem(object):
    theta_p: float
    theta_s: float

    @classmethod
    def for_gamma(cls, gamma_norm, waves):
        return cls(gamma_norm / (2.0 * waves.k_p), gamma_norm / (2.0 * waves.k_s))

    @property
    def matrix(self):
        """Shape ``(..., 2, 2)`` for theta arrays of shape ``(...)``."""
        p2 = np.asarray(self.theta_p, dtype=float) ** 2
        s2 = np.asarray(self.theta_s, dtype=float) ** 2
        return np.stack(
            [np.stack([p2, -(1.0 - p2)], axis=-1), np.stack([1.0 - s2, -s2], axis=-1)],
            axis=-2,
        )

    @property
    def determinant(self):
        return 1.0 - np.asarray(self.theta_p) ** 2 - np.asarray(self.theta_s) ** 2

    def solve(self, rhs):
        """``(b_11, b_22)`` from ``(a_p, a_s)`` along the last axis of ``rhs``."""
        determinant = np.abs(self.determinant)
        if np.any(determinant < SINGULAR_DETERMINANT):
            raise ThetaSingular(
                "Theta system is singular, det = {:.3g}".format(float(np.min(determinant)))
            )
        rhs = np.asarray(rhs)
        return np.linalg.solve(self.matrix, rhs[..., None])[..., 0]


def elastic_scales(waves, m, d):
    """Factors turning probed correlations into probed coefficients."""
    b2 = beta(d) ** 2
    k = waves.k
    return (
        waves.c_p ** (m - d - 2) / b2 * k ** (m - d + 3),
        waves.c_s ** (m - d - 2) / b2 * k ** (m - d + 3),
    )


def elastic_frame(gammas):
    """``gamma_hat``, ``nu_1`` and (three dimensions) ``nu_2 = gamma_hat x nu_1``."""
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    units = gammas / np.linalg.norm(gammas, axis=-1, keepdims=True)
    nu1 = orthogonal_units(gammas)
    nu2 = np.cross(units, nu1) if gammas.shape[1] == 3 else None
    return units, nu1, nu2


def probe_vectors(gammas, waves):
    """
    Probe directions for nonzero gammas: compressional pair ``x_p, y_p``,
    shear pair ``x_s, y_s`` and the shear sandwich vectors ``rho_1, rho_2``.
    """
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    norms = np.linalg.norm(gammas, axis=-1)[:, None]
    units, nu1, nu2 = elastic_frame(gammas)
    theta_p = norms / (2.0 * waves.k_p)
    theta_s = norms / (2.0 * waves.k_s)
    cos_p = np.sqrt(1.0 - theta_p ** 2)
    cos_s = np.sqrt(1.0 - theta_s ** 2)
    return {
        "x_p": theta_p * units + cos_p * nu1,
        "y_p": theta_p * units - cos_p * nu1,
        "x_s": theta_s * units + cos_s * nu1,
        "y_s": theta_s * units - cos_s * nu1,
        "rho_1": cos_s * units - theta_s * nu1,
        "rho_2": cos_s * units + theta_s * nu1,
        "nu_2": nu2,
        "theta_p": theta_p[:, 0],
        "theta_s": theta_s[:, 0],
    }


def _sandwich(left, matrices, right):
    return np.einsum("gi,gij,gj->g", left, matrices, right)


def elastic_b_entries_batch(supplier, gammas, k, model, m):
    """
    Diagonal entries ``b_11, b_22 (, b_33)`` of the rotated coefficient matrix
    for nonzero gammas, shape ``(G, d)``.
    """
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    d = model.d
    waves = ElasticWavenumbers.from_lame(k, *model.lame)
    scale_p, scale_s = elastic_scales(waves, m, d)
    probes = probe_vectors(gammas, waves)
    p_values = supplier(probes["x_p"], probes["y_p"], "p")
    s_values = supplier(probes["x_s"], probes["y_s"], "s")
    a_p = scale_p * _sandwich(probes["x_p"], p_values, probes["y_p"])
    a_s = scale_s * _sandwich(probes["rho_1"], s_values, probes["rho_2"])

    system = ThetaSystem(probes["theta_p"], probes["theta_s"])
    solved = system.solve(np.stack([a_p, a_s], axis=-1))
    entries = [solved[:, 0], solved[:, 1]]
    if d == 3:
        entries.append(scale_s * _sandwich(probes["nu_2"], s_values, probes["nu_2"]))
    return np.stack(entries, axis=-1)


def _antipodal_diagonal(supplier, count, k, model, m):
    d = model.d
    waves = ElasticWavenumbers.from_lame(k, *model.lame)
    scale_p, _ = elastic_scales(waves, m, d)
    diagonal = []
    for i in range(d):
        e = np.tile(np.eye(d)[i], (count, 1))
        values = supplier(e, -e, "p")
        diagonal.append(-scale_p * _sandwich(e, values, -e))
    return np.stack(diagonal, axis=-1)


def recover_trace_hat_elastic_batch(supplier, gammas, k, model, m):
    """
    ``Tr sigma_hat(gamma)`` at every gamma with ``|gamma| <= k_p``.

    Raises:
        FrequencyTooHigh: some ``|gamma| > k_p``
    """
    gammas = np.atleast_2d(np.asarray(gammas, dtype=float))
    waves = ElasticWavenumbers.from_lame(k, *model.lame)
    norms = np.linalg.norm(gammas, axis=-1)
    if np.any(norms > waves.k_p * (1.0 + 1e-12)):
        raise FrequencyTooHigh(
            "|gamma| = {:.6g} exceeds k_p = {:.6g}".format(norms.max(), waves.k_p)
        )
    out = np.zeros(gammas.shape[0], dtype=complex)
    small = norms < settings.ELASTIC_ZERO_FREQUENCY_RATIO * waves.k_p
    if np.any(small):
        out[small] = np.sum(
            _antipodal_diagonal(supplier, int(np.sum(small)), k, model, m), axis=-1
        )
    if np.any(~small):
        entries = elastic_b_entries_batch(supplier, gammas[~small], k, model, m)
        out[~small] = np.sum(entries, axis=-1)
    return out


def _pair_supplier(p_corr, s_corr):
    correlations = {"p": p_corr, "s": s_corr}

    def values(x_hats, y_hats, branch):
        return np.array(
            [correlations[branch](x, y) for x, y in zip(x_hats, y_hats)]
        )

    return values


def recover_trace_hat_elastic(p_corr, s_corr, gamma, k, lam, mu, m, d):
    """
    Recover ``Tr sigma_hat(gamma)`` from compressional and shear correlations.

    Args:
        p_corr, s_corr (Callable): ``(x_hat, y_hat) -> d x d`` correlation
            matrices of the compressional and shear patterns
        gamma (array-like): frequency with ``|gamma| <= k_p``

    Raises:
        FrequencyTooHigh: ``|gamma| > k_p``
        ThetaSingular: the Theta system cannot be solved
    """
    model = WaveModel.elastic(d, lam, mu)
    gamma = np.asarray(gamma, dtype=float)[None, :]
    supplier = _pair_supplier(p_corr, s_corr)
    return complex(recover_trace_hat_elastic_batch(supplier, gamma, k, model, m)[0])


def elastic_b_entries(p_corr, s_corr, gamma, k, lam, mu, m, d):
    """Rotated diagonal entries ``(b_11, b_22[, b_33])`` at a nonzero gamma."""
    model = WaveModel.elastic(d, lam, mu)
    gamma = np.asarray(gamma, dtype=float)[None, :]
    supplier = _pair_supplier(p_corr, s_corr)
    return tuple(elastic_b_entries_batch(supplier, gamma, k, model, m)[0])
