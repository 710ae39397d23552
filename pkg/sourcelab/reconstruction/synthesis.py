from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

from cdislogging import get_logger

from sourcelab import settings
from sourcelab.errors import DimensionMismatch
from sourcelab.quadrature import fourier_synthesis
from sourcelab.reconstruction.errors import NonHermitianInput

logger = get_logger(__name__)


def gamma_grid(d, cutoff, spacing):
    """
    Nodes of the lattice ``spacing * Z^d`` inside the closed ball of radius
    ``cutoff``, in lexicographic order. The set is symmetric under
    ``gamma -> -gamma`` and node ``i`` is the negation of node ``G - 1 - i``.
    """
    steps = int(np.floor(cutoff / spacing + 1e-12))
    axis = spacing * np.arange(-steps, steps + 1)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    nodes = np.stack(mesh, axis=-1).reshape(-1, d)
    inside = np.linalg.norm(nodes, axis=-1) <= cutoff * (1.0 + 1e-12)
    return nodes[inside]


def default_spacing(grid):
    """Largest lattice spacing resolving the box, ``pi / L``."""
    return np.pi / grid.length


@dataclass(frozen=True, eq=False)
class FourierCoefficientGrid(object):
    """
    Recovered coefficients on a symmetric gamma lattice of radius ``cutoff``.
    ``values`` has shape ``(G,)`` or ``(G, d, d)``.
    """

    gammas: np.ndarray
    values: np.ndarray
    cutoff: float
    spacing: float

    def __post_init__(self):
        if self.values.shape[0] != self.gammas.shape[0]:
            raise DimensionMismatch("one coefficient per gamma node is required")

    @classmethod
    def on_ball(cls, d, cutoff, spacing, evaluate):
        gammas = gamma_grid(d, cutoff, spacing)
        return cls(gammas, np.asarray(evaluate(gammas)), float(cutoff), float(spacing))

    def partners(self):
        return self.values[::-1]

    def hermitian_residue(self):
        """Largest ``|value(-gamma) - conj(value(gamma))|``."""
        if self.values.size == 0:
            return 0.0
        return float(np.max(np.abs(self.partners() - np.conj(self.values))))

    def hermitian_symmetrize(self):
        """Average each value with the conjugate of its partner's."""
        values = 0.5 * (self.values + np.conj(self.partners()))
        return replace(self, values=values)


@dataclass(frozen=True, eq=False)
class ReconstructionResult(object):
    """
    Recovered strength (scalar, trace or matrix per node) on ``grid``, with
    the cutoff it was synthesized with and, when the planted strength is
    known, relative sup-norm and L1 errors.
    """

    grid: object
    values: np.ndarray
    cutoff: float
    k: float = None
    sup_error: float = None
    l1_error: float = None


def _relative(error, reference):
    return float(error / reference) if reference > 0 else float(error)


def inverse_fourier_cutoff(coefficients, grid, k=None, planted=None):
    """
    Riemann-sum synthesis
    ``sigma(x) = (2 pi)^{-d} sum_{|gamma| <= rho} e^{i gamma.x} value(gamma)
    spacing^d`` on ``grid``.

    Args:
        coefficients (FourierCoefficientGrid): Hermitian-symmetrized values
        grid (SpatialGrid): output grid
        planted (Optional[np.ndarray]): true nodal values for error metrics

    Raises:
        NonHermitianInput:
            the synthesized field has an imaginary part above
            ``settings.HERMITIAN_RESIDUE`` of its amplitude
    """
    d = grid.d
    weight = (coefficients.spacing / (2.0 * np.pi)) ** d
    field = fourier_synthesis(grid, coefficients.gammas, coefficients.values, weight)
    amplitude = float(np.max(np.abs(field))) if field.size else 0.0
    residue = float(np.max(np.abs(field.imag))) if field.size else 0.0
    if residue > settings.HERMITIAN_RESIDUE * amplitude:
        raise NonHermitianInput(
            "synthesized field has imaginary part {:.3e} for amplitude {:.3e}".format(
                residue, amplitude
            )
        )
    values = field.real
    sup_error = l1_error = None
    if planted is not None:
        planted = np.asarray(planted, dtype=float)
        matrix = values.ndim == d + 2
        axes = (-2, -1) if matrix else ()
        difference = np.sqrt(np.sum((values - planted) ** 2, axis=axes)) if matrix else np.abs(values - planted)
        reference = np.sqrt(np.sum(planted ** 2, axis=axes)) if matrix else np.abs(planted)
        sup_error = _relative(difference.max(), reference.max())
        l1_error = _relative(difference.sum(), reference.sum())
    logger.debug(
        "synthesized {} gamma nodes with cutoff {}".format(
            coefficients.gammas.shape[0], coefficients.cutoff
        )
    )
    return ReconstructionResult(grid, values, coefficients.cutoff, k, sup_error, l1_error)


def tail_integral_oracle(sigma_hat, cutoff, d, direction=None):
    """
    ``(2 pi)^{-d} int_{|gamma| > cutoff} |sigma_hat|`` for a transform whose
    modulus is radial, integrated along ``direction`` (default ``e_1``).
    """
    direction = np.eye(d)[0] if direction is None else np.asarray(direction, dtype=float)
    sphere = 2.0 * np.pi if d == 2 else 4.0 * np.pi

    def integrand(r):
        return np.abs(sigma_hat(r * direction[None, :]))[0] * r ** (d - 1)

    value, _ = integrate.quad(integrand, cutoff, np.inf, limit=200)
    return float(sphere * value / (2.0 * np.pi) ** d)


def reconstruct(model, supplier, k, m, grid, cutoff, spacing=None, planted=None):
    """
    Recover coefficients on the gamma lattice of radius ``cutoff`` from the
    correlation ``supplier`` and synthesize them on ``grid``.

    Args:
        model (WaveModel)
        supplier (Callable): ``(x_hats, y_hats, branch) -> values``
        k (float): wavenumber of the correlation data
        m (float): covariance order
        grid (SpatialGrid): output grid
        cutoff (float): at most ``2k``, or ``k_p`` for the elastic trace
        spacing (Optional[float]): lattice spacing, default ``pi / L``
        planted (Optional[np.ndarray]): nodal values for error metrics

    Return:
        ReconstructionResult
    """
    from sourcelab.reconstruction.recover import recover_coefficients

    spacing = spacing or default_spacing(grid)
    coefficients = FourierCoefficientGrid.on_ball(
        grid.d,
        cutoff,
        spacing,
        lambda gammas: recover_coefficients(model, gammas, k, m, supplier),
    )
    logger.info(
        "recovered {} coefficients at k = {} with cutoff {}".format(
            coefficients.gammas.shape[0], k, cutoff
        )
    )
    return inverse_fourier_cutoff(
        coefficients.hermitian_symmetrize(), grid, k=k, planted=planted
    )
