import hashlib
import json

import numpy as np


def is_power_of_two(value):
    return value >= 2 and (value & (value - 1)) == 0


def sha256_file(path, block_size=65536):
    """Return the hex sha256 digest of the file at ``path``."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(block_size), b""):
            digest.update(block)
    return digest.hexdigest()


def sha256_json(obj):
    """Digest of a JSON-serializable object with sorted keys."""
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def derive_seed(base_seed, stage, index):
    """
    Derive the 64-bit seed for item ``index`` of pipeline stage ``stage``.

    Every seed in a run is derived from the configured base seed this way, so
    a run is reproducible and no stage draws from ambient entropy.
    """
    key = "{}:{}:{}".format(int(base_seed), stage, int(index)).encode("utf-8")
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


def unit_vectors(vectors):
    vectors = np.asarray(vectors, dtype=float)
    norms = np.linalg.norm(vectors, axis=-1, keepdims=True)
    return vectors / norms


def frobenius(values, matrix):
    """
    Entrywise modulus for scalar data, Frobenius norm over the two trailing
    axes for matrix data.
    """
    values = np.asarray(values)
    if matrix:
        return np.sqrt(np.sum(np.abs(values) ** 2, axis=(-2, -1)))
    return np.abs(values)


def loglog_slope(xs, ys):
    """
    Least-squares slope of ``log(ys)`` against ``log(xs)``.

    Returns NaN when any ``ys`` is not positive.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 2 or np.any(ys <= 0):
        return float("nan")
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)
