import numpy as np
import pytest

from sourcelab.errors import (
    DimensionMismatch,
    NotNonnegDefinite,
    OrderOutOfRange,
    SmoothnessTooLow,
    SupportViolation,
    UnvalidatedSpec,
)
from sourcelab.params import (
    SourceSpec,
    StrengthField,
    WaveModel,
    check_smoothness,
    validate_source,
)


def test_admissible_polyharmonic_source(poly_model, bump2):
    """m = 2 lies in (0, 2] for d = 2, n = 1."""
    spec = validate_source(poly_model, SourceSpec(2.0, 3, bump2))
    assert spec.checked_for == poly_model
    assert spec.require_checked() is spec


def test_validation_is_idempotent(poly_spec, poly_model):
    """Validating a checked spec returns the very same object."""
    assert validate_source(poly_model, poly_spec) is poly_spec


def test_order_out_of_range(grid3, bump3):
    """m = -1.5 is outside (1, 3] for d = 3, n = 1."""
    with pytest.raises(OrderOutOfRange) as error:
        validate_source(WaveModel.polyharmonic(3, 1), SourceSpec(-1.5, 4, bump3))
    assert error.value.code == 12


def test_support_violation(grid2, poly_model):
    """Nonzero strength outside the unit ball is rejected."""
    values = np.zeros(grid2.shape)
    values[0, 0] = 1.0
    with pytest.raises(SupportViolation):
        validate_source(poly_model, SourceSpec(2.0, 3, StrengthField(grid2, values)))


def test_negative_scalar_strength(grid2, poly_model):
    """Negative scalar strength is rejected."""
    values = np.zeros(grid2.shape)
    values[32, 32] = -1.0
    with pytest.raises(NotNonnegDefinite):
        validate_source(poly_model, SourceSpec(2.0, 3, StrengthField(grid2, values)))


def test_indefinite_matrix_strength(grid3):
    """A nodal matrix with eigenvalue -1 is rejected."""
    values = np.zeros(grid3.shape + (3, 3))
    values[16, 16, 16] = [[1.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 0.0]]
    model = WaveModel.elastic(3, 2.0, 1.0)
    with pytest.raises(NotNonnegDefinite) as error:
        validate_source(model, SourceSpec(2.5, 4, StrengthField(grid3, values)))
    assert error.value.code == 14


def test_shape_must_match_model(poly_model, grid2):
    """A matrix strength does not drive a scalar model."""
    strength = StrengthField.zeros(grid2, matrix=True)
    with pytest.raises(DimensionMismatch):
        validate_source(poly_model, SourceSpec(2.0, 3, strength))


def test_unchecked_spec(bump2):
    """Unvalidated specs are refused by ``require_checked``."""
    with pytest.raises(UnvalidatedSpec):
        SourceSpec(2.0, 3, bump2).require_checked()


def test_with_strength_clears_check(poly_spec, bump2):
    """Swapping the strength drops the validation stamp."""
    assert poly_spec.with_strength(bump2.scaled(2.0)).checked_for is None


@pytest.mark.parametrize(
    "model, s, ok",
    [
        (WaveModel.polyharmonic(2, 1), 3, True),
        (WaveModel.polyharmonic(2, 1), 2, False),
        (WaveModel.polyharmonic(3, 2), 4, True),
        (WaveModel.electromagnetic(), 3, False),
        (WaveModel.elastic(3, 2.0, 1.0), 4, True),
    ],
)
def test_check_smoothness(model, s, ok, bump2):
    """The smoothness index must be an integer strictly above the floor."""
    spec = SourceSpec(2.0, s, bump2)
    if ok:
        assert check_smoothness(model, spec) is spec
    else:
        with pytest.raises(SmoothnessTooLow):
            check_smoothness(model, spec)
