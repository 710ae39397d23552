from dataclasses import dataclass, replace

import numpy as np

from cdislogging import get_logger

from sourcelab.errors import (
    DimensionMismatch,
    NotNonnegDefinite,
    OrderOutOfRange,
    SmoothnessTooLow,
    SupportViolation,
    UnvalidatedSpec,
)
from sourcelab.params.model import WaveModel
from sourcelab.params.strength import StrengthField, eigenvalue_tolerance

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SourceSpec(object):
    """
    Statistics of the random source: covariance order ``m``, smoothness index
    ``s`` and strength.

    ``checked_for`` is set by ``validate_source`` to the model the spec was
    validated against; the samplers refuse specs without it.
    """

    m: float
    s: int
    strength: StrengthField
    checked_for: WaveModel = None

    @property
    def grid(self):
        return self.strength.grid

    def require_checked(self):
        if self.checked_for is None:
            raise UnvalidatedSpec("source spec has not been validated")
        return self

    def with_strength(self, strength):
        return replace(self, strength=strength, checked_for=None)


def validate_source(model, spec):
    """
    Check ``spec`` against the admissibility conditions of ``model``.

    Validating a spec that was already checked for the same model returns the
    very same object.

    Args:
        model (WaveModel)
        spec (SourceSpec)

    Return:
        SourceSpec: the spec, stamped with ``checked_for=model``

    Raises:
        OrderOutOfRange: m outside the model's interval
        SupportViolation: nonzero strength outside the unit ball
        NotNonnegDefinite: negative strength, asymmetric or indefinite matrix
        DimensionMismatch: strength shape does not match the model
    """
    if spec.checked_for == model:
        return spec

    lower, upper = model.order_interval()
    if not lower < spec.m <= upper:
        raise OrderOutOfRange(
            "order m = {} is outside ({}, {}] for the {} model".format(
                spec.m, lower, upper, model.kind.value
            )
        )

    strength = spec.strength
    if strength.grid.d != model.d:
        raise DimensionMismatch(
            "strength grid has d = {}, model has d = {}".format(strength.grid.d, model.d)
        )
    if strength.is_matrix != model.is_vector:
        raise DimensionMismatch(
            "{} model needs a {} strength".format(
                model.kind.value, "matrix" if model.is_vector else "scalar"
            )
        )

    outside = ~strength.grid.unit_ball_mask()
    if np.any(strength.pointwise_norm()[outside] != 0):
        raise SupportViolation("strength is nonzero outside the unit ball")

    values = strength.values
    if strength.is_matrix:
        if not np.allclose(values, np.swapaxes(values, -1, -2)):
            raise NotNonnegDefinite("strength matrices are not symmetric")
        tolerance = eigenvalue_tolerance(values)
        lowest = float(np.linalg.eigvalsh(values).min())
        if lowest < -tolerance:
            raise NotNonnegDefinite(
                "strength matrix eigenvalue {:.3e} is below -{:.3e}".format(
                    lowest, tolerance
                )
            )
    elif values.min() < 0:
        raise NotNonnegDefinite(
            "scalar strength takes negative value {:.3e}".format(values.min())
        )

    logger.debug(
        "validated {} source with m = {}, s = {}".format(model.kind.value, spec.m, spec.s)
    )
    return replace(spec, checked_for=model)


def check_smoothness(model, spec):
    """
    Raise ``SmoothnessTooLow`` unless the smoothness index is a positive
    integer strictly above the stability floor of ``model``.
    """
    floor = model.smoothness_floor()
    if int(spec.s) != spec.s or spec.s < 1 or not spec.s > floor:
        raise SmoothnessTooLow(
            "smoothness s = {} must be an integer above {}".format(spec.s, floor)
        )
    return spec
