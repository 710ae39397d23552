import json

import numpy as np
import pytest

from sourcelab import storage
from sourcelab.errors import SourceLabError
from sourcelab.reconstruction import ReconstructionResult
from sourcelab.sampler import FieldRealization, sample_scalar


def test_strength_round_trip_is_bit_exact(tmpdir, bump2, poly_model):
    """A stored strength loads back bit for bit, with its metadata."""
    stem = str(tmpdir.join("strength"))
    paths = storage.save_strength(stem, bump2, model=poly_model, m=2.0, s=3)
    assert paths == [stem + ".bin", stem + ".json"]
    loaded, metadata = storage.load_strength(stem)
    assert loaded.grid == bump2.grid
    assert np.array_equal(loaded.values, bump2.values)
    assert metadata["m"] == 2.0
    assert metadata["model"]["kind"] == "polyharmonic"


def test_binary_layout(tmpdir, grid2):
    """The binary is a flat little-endian float64 dump."""
    stem = str(tmpdir.join("array"))
    values = np.arange(np.prod(grid2.shape), dtype=float).reshape(grid2.shape)
    storage.save_array(stem, values, grid2, "strength")
    raw = np.fromfile(stem + ".bin", dtype="<f8")
    assert np.array_equal(raw, values.ravel())
    with open(stem + ".json") as f:
        sidecar = json.load(f)
    assert sidecar["shape"] == list(grid2.shape)
    assert sidecar["complex"] is False


def test_complex_arrays_interleave(tmpdir, grid2):
    stem = str(tmpdir.join("spectrum"))
    values = np.full(grid2.shape, 1.0 + 2.0j)
    storage.save_array(stem, values, grid2, "spectrum")
    loaded, _, sidecar = storage.load_array(stem)
    assert sidecar["complex"]
    assert np.array_equal(loaded, values)
    assert np.fromfile(stem + ".bin", dtype="<f8")[:2].tolist() == [1.0, 2.0]


def test_realization_keeps_seed(tmpdir, poly_spec, grid2):
    """The seed and order travel in the sidecar."""
    realization = sample_scalar(poly_spec, grid2, seed=12345)
    stem = str(tmpdir.join("realization"))
    storage.save_realization(stem, realization)
    loaded = storage.load_realization(stem)
    assert isinstance(loaded, FieldRealization)
    assert loaded.seed == 12345
    assert loaded.m == 2.0
    assert np.array_equal(loaded.values, realization.values)


def test_reconstruction_round_trip(tmpdir, bump2):
    result = ReconstructionResult(bump2.grid, bump2.values, 64.0, 32.0, 1e-9, 2e-9)
    stem = str(tmpdir.join("reconstruction"))
    storage.save_reconstruction(stem, result)
    loaded = storage.load_reconstruction(stem)
    assert loaded.cutoff == 64.0
    assert loaded.sup_error == 1e-9
    assert np.array_equal(loaded.values, bump2.values)


def test_kind_mismatch(tmpdir, bump2):
    """Loading a strength as a realization fails."""
    stem = str(tmpdir.join("strength"))
    storage.save_strength(stem, bump2)
    with pytest.raises(SourceLabError):
        storage.load_realization(stem)


def test_missing_array(tmpdir):
    with pytest.raises(SourceLabError):
        storage.load_array(str(tmpdir.join("nothing")))
