import os

import numpy as np
import yaml

import tests


def read_file(filename):
    """Read the contents of a file in the tests directory."""
    root_dir = os.path.dirname(os.path.realpath(tests.__file__))
    with open(os.path.join(root_dir, filename), "r") as f:
        return f.read()


def read_yaml(filename):
    return yaml.safe_load(read_file(filename))


def relative_error(value, reference):
    """Largest entrywise deviation relative to the largest reference entry."""
    value = np.asarray(value)
    reference = np.asarray(reference)
    return float(np.max(np.abs(value - reference)) / np.max(np.abs(reference)))


def random_unit(rng, d, count=None):
    shape = (d,) if count is None else (count, d)
    vectors = rng.standard_normal(shape)
    return vectors / np.linalg.norm(vectors, axis=-1, keepdims=True)
