"""
Binary-plus-JSON container for gridded data.

An array is stored as ``<stem>.bin``, a flat little-endian float64 dump in C
order (complex arrays interleave real and imaginary parts), next to a
``<stem>.json`` sidecar holding the shape, the grid and any metadata the
caller attaches (model, m, s, seed, ...). Loading reproduces the array
bit for bit.
"""

import json
import os

import numpy as np

from sourcelab.errors import SourceLabError
from sourcelab.params.grid import SpatialGrid
from sourcelab.params.strength import StrengthField

DTYPE = "<f8"


def _paths(stem):
    return stem + ".bin", stem + ".json"


def save_array(stem, array, grid, kind, metadata=None):
    """
    Write ``array`` and its sidecar.

    Return:
        List[str]: the two files written, binary first
    """
    array = np.asarray(array)
    is_complex = np.iscomplexobj(array)
    flat = array.view(float) if is_complex else array
    sidecar = {
        "kind": kind,
        "shape": list(array.shape),
        "complex": bool(is_complex),
        "dtype": DTYPE,
        "grid": grid.to_dict(),
        "metadata": metadata or {},
    }
    bin_path, json_path = _paths(stem)
    directory = os.path.dirname(bin_path)
    if directory and not os.path.isdir(directory):
        os.makedirs(directory)
    np.ascontiguousarray(flat, dtype=DTYPE).tofile(bin_path)
    with open(json_path, "w") as f:
        json.dump(sidecar, f, indent=2, sort_keys=True)
    return [bin_path, json_path]


def load_array(stem):
    """
    Return:
        Tuple[np.ndarray, SpatialGrid, dict]: array, grid and the full sidecar
    """
    bin_path, json_path = _paths(stem)
    if not os.path.exists(bin_path) or not os.path.exists(json_path):
        raise SourceLabError("no stored array at {}".format(stem))
    with open(json_path, "r") as f:
        sidecar = json.load(f)
    flat = np.fromfile(bin_path, dtype=sidecar.get("dtype", DTYPE))
    if sidecar["complex"]:
        array = flat.view(complex).reshape(sidecar["shape"])
    else:
        array = flat.reshape(sidecar["shape"])
    return array, SpatialGrid.from_dict(sidecar["grid"]), sidecar


def save_strength(stem, strength, model=None, m=None, s=None):
    metadata = {"m": m, "s": s, "model": model.to_dict() if model else None}
    return save_array(stem, strength.values, strength.grid, "strength", metadata)


def load_strength(stem):
    values, grid, sidecar = load_array(stem)
    if sidecar["kind"] != "strength":
        raise SourceLabError("{} holds a {}, not a strength".format(stem, sidecar["kind"]))
    return StrengthField(grid, values), sidecar["metadata"]


def save_realization(stem, realization):
    metadata = {
        "seed": realization.seed,
        "m": realization.m,
        "projected": realization.projected,
    }
    return save_array(stem, realization.values, realization.grid, "realization", metadata)


def load_realization(stem):
    from sourcelab.sampler.gmig import FieldRealization

    values, grid, sidecar = load_array(stem)
    if sidecar["kind"] != "realization":
        raise SourceLabError(
            "{} holds a {}, not a realization".format(stem, sidecar["kind"])
        )
    metadata = sidecar["metadata"]
    return FieldRealization(
        grid,
        values,
        seed=metadata["seed"],
        m=metadata["m"],
        projected=metadata.get("projected", False),
    )


def save_reconstruction(stem, result):
    metadata = {
        "k": result.k,
        "cutoff": result.cutoff,
        "sup_error": result.sup_error,
        "l1_error": result.l1_error,
    }
    return save_array(stem, result.values, result.grid, "reconstruction", metadata)


def load_reconstruction(stem):
    from sourcelab.reconstruction.synthesis import ReconstructionResult

    values, grid, sidecar = load_array(stem)
    if sidecar["kind"] != "reconstruction":
        raise SourceLabError(
            "{} holds a {}, not a reconstruction".format(stem, sidecar["kind"])
        )
    metadata = sidecar["metadata"]
    return ReconstructionResult(
        grid=grid,
        values=values,
        cutoff=metadata["cutoff"],
        k=metadata["k"],
        sup_error=metadata["sup_error"],
        l1_error=metadata["l1_error"],
    )
