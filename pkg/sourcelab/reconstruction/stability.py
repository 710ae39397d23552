"""
Numerical probe of the stability estimates: how the strength compares with
the correlation data ``M(k)`` scaled by the theorem's power of ``k``.
"""

import csv
from dataclasses import astuple, dataclass, fields

import numpy as np

from cdislogging import get_logger

from sourcelab.correlation.analytic import analytic_correlation_grid
from sourcelab.correlation.statistics import sup_from_grid
from sourcelab.farfield.directions import direction_grid, with_antipodes
from sourcelab.farfield.patterns import ElasticWavenumbers, beta
from sourcelab.params.model import ModelKind
from sourcelab.params.source import SourceSpec, check_smoothness
from sourcelab.params.transforms import QuadratureTransform

logger = get_logger(__name__)


@dataclass(frozen=True)
class ProbeRow(object):
    """
    One wavenumber of a stability probe.

    ``ratio`` is ``norm / (power * sup_value)``; ``l1_value`` is the
    L1-type quantity bounded by ``l1_bound``.
    """

    k: float
    sup_value: float
    power: float
    norm: float
    ratio: float
    l1_value: float
    l1_bound: float
    l1_holds: bool
    cutoff: float


def stability_power(model, k, m, s):
    """The power of ``k`` in the sup-norm stability estimate of ``model``."""
    d = model.d
    if model.kind is ModelKind.POLYHARMONIC:
        return k ** (d / s + m + 4 * model.n - d - 1)
    if model.kind is ModelKind.ELECTROMAGNETIC:
        return k ** (3.0 / s + m - 2)
    return k ** (d / s + m - d + 3)


def l1_bound_factor(model, k, m):
    """Factor ``B(k)`` of the L1-type bound ``|sigma| <= B(k) M(k)``."""
    d = model.d
    b2 = abs(beta(d)) ** 2
    if model.kind is ModelKind.POLYHARMONIC:
        return 2.0 * model.n ** 2 / b2 * k ** (4 * model.n + m - d - 1)
    if model.kind is ModelKind.ELECTROMAGNETIC:
        return 2.0 / b2 * k ** (m - 2)
    c_p = ElasticWavenumbers.from_lame(k, *model.lame).c_p
    return 2.0 * d / (b2 * c_p ** (d + 2 - m)) * k ** (m + 3 - d)


def strength_norms(model, strength):
    """
    The sup norm and the L1-type norm the estimates of ``model`` control:
    ``sigma`` itself (polyharmonic), ``int sigma`` in Frobenius norm
    (electromagnetic) or ``Tr sigma`` (elastic).
    """
    if model.kind is ModelKind.POLYHARMONIC:
        return strength.sup_norm(), strength.l1_norm()
    if model.kind is ModelKind.ELECTROMAGNETIC:
        return strength.sup_norm(), float(np.linalg.norm(strength.integral()))
    trace = strength.trace()
    return trace.sup_norm(), trace.l1_norm()


def _ratio(norm, denominator):
    if denominator > 0:
        return norm / denominator
    return 0.0 if norm == 0 else float("inf")


def stability_probe(strength, model, m, s, ks, correlation=None, directions=None, rtol=1e-12):
    """
    Tabulate the stability quantities at every wavenumber.

    Args:
        strength (StrengthField): planted strength
        model (WaveModel)
        m (float): covariance order
        s (int): smoothness index, checked against the model's floor
        ks (Iterable[float]): wavenumbers
        correlation (Optional[Callable]):
            ``(k, directions) -> {branch: grid}``; defaults to the analytic
            pathway for the quadrature transform of ``strength``
        directions (Optional[np.ndarray]):
            direction grid, completed with antipodes

    Return:
        List[ProbeRow]

    Raises:
        SmoothnessTooLow: ``s`` not above the model's floor
    """
    check_smoothness(model, SourceSpec(m, s, strength))
    if correlation is None:
        sigma_hat = QuadratureTransform(strength)

        def correlation(k, directions):
            return analytic_correlation_grid(model, sigma_hat, k, m, directions)

    directions = direction_grid(model.d) if directions is None else directions
    directions = with_antipodes(directions)
    norm, l1_value = strength_norms(model, strength)

    rows = []
    for k in ks:
        k = float(k)
        statistic = sup_from_grid(
            correlation(k, directions), k, model, directions.shape[0]
        )
        power = stability_power(model, k, m, s)
        bound = l1_bound_factor(model, k, m) * statistic.value
        rows.append(
            ProbeRow(
                k=k,
                sup_value=statistic.value,
                power=power,
                norm=norm,
                ratio=_ratio(norm, power * statistic.value),
                l1_value=l1_value,
                l1_bound=bound,
                l1_holds=bool(l1_value <= bound * (1.0 + rtol)),
                cutoff=k ** (1.0 / s),
            )
        )
        logger.debug(
            "k = {}: M = {:.6e}, ratio = {:.6e}, L1 {:.6e} <= {:.6e}".format(
                k, statistic.value, rows[-1].ratio, l1_value, bound
            )
        )
    return rows


def write_probe_csv(rows, path):
    """Write probe rows, one per wavenumber, with a header of field names."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([field.name for field in fields(ProbeRow)])
        for row in rows:
            writer.writerow(
                [
                    int(value) if isinstance(value, bool) else "{!r}".format(float(value))
                    for value in astuple(row)
                ]
            )
    return path
