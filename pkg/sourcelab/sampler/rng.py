"""
Counter-based white noise.

Each (seed, stream) pair keys its own Philox generator, and node ``j`` of a
stream always consumes uniforms ``2j`` and ``2j + 1`` (Box-Muller), so a
draw depends only on (seed, stream, node) and never on iteration order or on
which worker produced it.
"""

import numpy as np

SEED_LIMIT = 2 ** 64


def philox(seed, stream):
    seed = int(seed)
    if not 0 <= seed < SEED_LIMIT:
        raise ValueError("seed must be a 64-bit unsigned integer, got {}".format(seed))
    key = seed * SEED_LIMIT + int(stream)
    return np.random.Generator(np.random.Philox(key=key))


def standard_normal(seed, stream, shape):
    """
    Independent standard normal draws of the given shape for one
    (seed, stream) key.
    """
    count = int(np.prod(shape))
    uniforms = philox(seed, stream).random(2 * count)
    radius = np.sqrt(-2.0 * np.log1p(-uniforms[0::2]))
    angle = 2.0 * np.pi * uniforms[1::2]
    return (radius * np.cos(angle)).reshape(shape)
