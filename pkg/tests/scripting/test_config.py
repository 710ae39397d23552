import numpy as np
import pytest

from sourcelab.errors import ConfigInvalid
from sourcelab.params import ModelKind
from sourcelab.scripting import (
    load_config,
    parse_config,
    serialize_config,
    validate_config,
)
from sourcelab.scripting.config import build_strength, config_from_dict

from tests import utils


def test_parse(analytic_config_data):
    config = config_from_dict(analytic_config_data)
    assert config.model.kind is ModelKind.POLYHARMONIC
    assert config.model.n == 1
    assert config.wavenumbers == (4.0, 8.0, 16.0)
    assert config.strength.center == (0.1, -0.1)
    assert config.grid.points == 32
    assert config.direction_count == 16
    assert config.asymptotics.radii == (100.0, 200.0)
    assert config.monte_carlo.realizations == 256


def test_round_trip(analytic_config_data):
    """Serialized configs parse back to an equal config with the same digest."""
    config = config_from_dict(analytic_config_data)
    again = parse_config(serialize_config(config))
    assert again == config
    assert again.digest() == config.digest()
    assert config_from_dict(config.to_dict()) == config


def test_unset_directions_stay_unset(analytic_config_data):
    del analytic_config_data["directions"]
    config = config_from_dict(analytic_config_data)
    assert config.directions is None
    assert config.direction_count == 128
    assert "directions" not in config.to_dict()


def test_digest_tracks_content(analytic_config_data):
    first = config_from_dict(analytic_config_data).digest()
    analytic_config_data.source.m = 1.5
    assert config_from_dict(analytic_config_data).digest() != first


def test_electromagnetic_defaults():
    text = utils.read_file("resources/zero_em.yaml")
    config = parse_config(text)
    assert config.model.d == 3
    assert config.strength.kind == "zero"
    assert config.cutoff.value == 2.0


def test_default_matrix_is_scaled_identity(analytic_config_data):
    analytic_config_data.model = {"kind": "electromagnetic"}
    analytic_config_data.source.strength.center = [0.0, 0.0, 0.0]
    analytic_config_data.source.strength.amplitude = 2.0
    analytic_config_data.source.s = 4
    config = config_from_dict(analytic_config_data)
    strength = build_strength(config)
    center = (config.grid.points // 2,) * 3
    assert np.allclose(strength.values[center], 2.0 * np.eye(3))


def _invalid(data, message):
    with pytest.raises(ConfigInvalid) as error:
        config_from_dict(data)
    assert error.value.code == 2
    assert message in error.value.message


def test_schema_version(analytic_config_data):
    analytic_config_data.schema_version = 2
    _invalid(analytic_config_data, "schema_version")


def test_unknown_model(analytic_config_data):
    analytic_config_data.model.kind = "acoustic"
    _invalid(analytic_config_data, "model.kind")


def test_bad_lame(analytic_config_data):
    analytic_config_data.model = {"kind": "elastic", "d": 2, "lame": [1.0, -1.0]}
    _invalid(analytic_config_data, "model:")


def test_small_wavenumber(analytic_config_data):
    analytic_config_data.wavenumbers = [4.0, 1.0]
    _invalid(analytic_config_data, "wavenumber")


def test_monte_carlo_needs_section(analytic_config_data):
    analytic_config_data.pathway = "monte_carlo"
    _invalid(analytic_config_data, "monte_carlo section")


def test_single_realization(analytic_config_data):
    analytic_config_data.pathway = "monte_carlo"
    analytic_config_data.monte_carlo = {"realizations": 1}
    _invalid(analytic_config_data, "realizations")


def test_em_sampler_needs_em_model(analytic_config_data):
    analytic_config_data.monte_carlo = {"em_sampler": "projected"}
    _invalid(analytic_config_data, "em_sampler")


def test_fixed_cutoff_needs_value(analytic_config_data):
    analytic_config_data.cutoff = {"policy": "fixed"}
    _invalid(analytic_config_data, "cutoff.value")


def test_asymptotic_radii(analytic_config_data):
    analytic_config_data.asymptotics.radii = [5.0, 200.0]
    _invalid(analytic_config_data, "radii")


def test_center_dimension(analytic_config_data):
    analytic_config_data.source.strength.center = [0.0, 0.0, 0.0]
    _invalid(analytic_config_data, "center")


def test_missing_output_dir(analytic_config_data):
    del analytic_config_data["output_dir"]
    _invalid(analytic_config_data, "output_dir")


def test_source_checks_become_config_errors(analytic_config_data):
    """Out-of-range orders and off-ball bumps are reported as bad configs."""
    analytic_config_data.source.m = 3.0
    with pytest.raises(ConfigInvalid) as error:
        validate_config(config_from_dict(analytic_config_data))
    assert "source:" in error.value.message

    analytic_config_data.source.m = 2.0
    analytic_config_data.source.strength.center = [1.5, 0.0]
    with pytest.raises(ConfigInvalid):
        validate_config(config_from_dict(analytic_config_data))


def test_monte_carlo_wavenumbers_must_resolve(analytic_config_data):
    """Twice the largest wavenumber has to stay below the grid Nyquist wavenumber."""
    analytic_config_data.pathway = "monte_carlo"
    analytic_config_data.monte_carlo = {"realizations": 16}
    with pytest.raises(ConfigInvalid) as error:
        validate_config(config_from_dict(analytic_config_data))
    assert "alias" in error.value.message

    analytic_config_data.wavenumbers = [4.0, 12.0]
    validate_config(config_from_dict(analytic_config_data))

    analytic_config_data.pathway = "analytic"
    analytic_config_data.wavenumbers = [4.0, 16.0]
    validate_config(config_from_dict(analytic_config_data))


def test_validate_returns_checked_spec(analytic_config_data):
    config = config_from_dict(analytic_config_data)
    spec = validate_config(config)
    assert spec.checked_for == config.model
    assert spec.grid == config.grid


def test_unreadable_input(tmpdir):
    with pytest.raises(ConfigInvalid):
        parse_config("model: [unclosed")
    with pytest.raises(ConfigInvalid):
        parse_config("- just\n- a list\n")
    with pytest.raises(ConfigInvalid):
        load_config(str(tmpdir.join("missing.yaml")))
