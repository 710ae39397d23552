from dataclasses import dataclass

import numpy as np

from cdislogging import get_logger

from sourcelab.correlation.records import SupStatistic
from sourcelab.errors import EmptyInput, SourceLabError
from sourcelab.farfield.patterns import ElasticWavenumbers, beta
from sourcelab.params.model import ModelKind
from sourcelab.utils import frobenius

logger = get_logger(__name__)


def sup_statistic(records, model=None, resolution=None):
    """
    ``M(k)`` from a set of records at one wavenumber: the largest modulus
    (scalar) or Frobenius norm (matrix), over all branches.

    Raises:
        EmptyInput: no records
    """
    records = list(records)
    if not records:
        raise EmptyInput("sup statistic needs at least one record")
    ks = {record.k for record in records}
    if len(ks) != 1:
        raise SourceLabError("records span several wavenumbers: {}".format(sorted(ks)))
    norms = [record.norm() for record in records]
    best = int(np.argmax(norms))
    return SupStatistic(
        k=records[0].k,
        value=float(norms[best]),
        resolution=int(resolution or 0),
        model=model.kind.value if model is not None else "",
        stderr=records[best].norm_stderr(),
        pairs=len(records),
    )


def sup_from_grid(values, k, model, resolution, stderr=None):
    """
    ``M(k)`` from branch-keyed correlation grids such as those returned by
    ``analytic_correlation_grid``.
    """
    best_value, best_stderr, pairs = -1.0, 0.0, 0
    for branch, grid in values.items():
        grid = np.asarray(grid)
        norms = frobenius(grid, model.is_vector)
        if norms.size == 0:
            continue
        pairs += norms.size
        index = np.unravel_index(np.argmax(norms), norms.shape)
        if norms[index] > best_value:
            best_value = float(norms[index])
            if stderr is not None:
                best_stderr = float(frobenius(stderr[branch][index], model.is_vector))
    if pairs == 0:
        raise EmptyInput("sup statistic needs at least one direction pair")
    return SupStatistic(
        float(k), best_value, int(resolution), model.kind.value, best_stderr, pairs
    )


def correlation_prefactor(model, k):
    """
    Modulus of the factor multiplying ``k^{-m} sigma_hat`` in the principal
    correlation (compressional branch for the elastic model).
    """
    d = model.d
    b2 = abs(beta(d)) ** 2
    if model.kind is ModelKind.POLYHARMONIC:
        return b2 / model.n ** 2 * k ** (d + 1 - 4 * model.n)
    if model.kind is ModelKind.ELECTROMAGNETIC:
        return b2 * k ** 2
    waves = ElasticWavenumbers.from_lame(k, *model.lame)
    return b2 * waves.c_p ** (d + 2) * k ** (d - 3)


def estimate_residual_budget(values, reference, model, k, m):
    """
    Empirical residual constant: ``max |values - reference| k^{m+1}`` in units
    of the correlation prefactor. Reported for inspection only.
    """
    values = np.asarray(values)
    reference = np.asarray(reference)
    deviation = frobenius(values - reference, model.is_vector)
    if deviation.size == 0:
        raise EmptyInput("residual budget needs at least one pair")
    return float(np.max(deviation) * k ** (m + 1) / correlation_prefactor(model, k))


@dataclass(frozen=True)
class SandwichReport(object):
    k: float
    value: float
    lower: float
    upper: float
    budget: float
    inflation: float
    within: bool


def sandwich_bounds(strength, model, k, m, budget=0.0):
    """
    Lower and upper bounds on ``M(k)`` implied by a residual budget ``C``.

    Polyharmonic: ``(|beta|^2/n^2)(|sigma|_L1 -+ C/k) k^{d+1-4n-m}``.
    Electromagnetic: ``beta_3^2 k^{2-m}(|int sigma|_F -+ C/k)``.
    Elastic (lower only): ``(|beta|^2 c_p^{d+2-m}/d) k^{d-3-m} |Tr sigma|_L1
    - C |beta|^2 c_p^{d+1-m} k^{d-4-m}``.
    """
    d = model.d
    b2 = abs(beta(d)) ** 2
    if model.kind is ModelKind.POLYHARMONIC:
        scale = b2 / model.n ** 2 * k ** (d + 1 - 4 * model.n - m)
        norm = strength.l1_norm()
        return scale * (norm - budget / k), scale * (norm + budget / k)
    if model.kind is ModelKind.ELECTROMAGNETIC:
        scale = b2 * k ** (2 - m)
        norm = float(np.linalg.norm(strength.integral()))
        return scale * (norm - budget / k), scale * (norm + budget / k)
    c_p = ElasticWavenumbers.from_lame(k, *model.lame).c_p
    lower = b2 * c_p ** (d + 2 - m) / d * k ** (d - 3 - m) * strength.trace().l1_norm()
    lower -= budget * b2 * c_p ** (d + 1 - m) * k ** (d - 4 - m)
    return lower, float("inf")


def sandwich_check(statistic, strength, model, m, budget=0.0, inflation=0.0, rtol=1e-12):
    """
    Whether ``M(k)`` lies within its bounds, widened by ``inflation`` (e.g.
    four standard errors on the Monte Carlo pathway) and a relative
    tolerance ``rtol`` for rounding.
    """
    k = statistic.k
    lower, upper = sandwich_bounds(strength, model, k, m, budget)
    slack = inflation + rtol * max(abs(lower), abs(statistic.value))
    within = lower - slack <= statistic.value and (
        np.isinf(upper) or statistic.value <= upper + slack
    )
    logger.debug(
        "k = {}: M = {:.6e} within [{:.6e}, {:.6e}]: {}".format(
            k, statistic.value, lower, upper, within
        )
    )
    return SandwichReport(
        k, statistic.value, lower, upper, budget, inflation, bool(within)
    )
