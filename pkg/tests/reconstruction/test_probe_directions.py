from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from sourcelab.reconstruction import directions_for_gamma, directions_for_gammas
from sourcelab.reconstruction.errors import FrequencyTooHigh


@st.composite
def gamma_in_ball(draw):
    d = draw(st.sampled_from([2, 3]))
    k = draw(st.floats(1.0, 50.0))
    direction = np.array(draw(st.lists(st.floats(-1.0, 1.0), min_size=d, max_size=d)))
    if np.linalg.norm(direction) < 1e-3:
        direction = np.eye(d)[0]
    radius = draw(st.floats(0.0, 1.0)) * 2.0 * k
    return radius * direction / np.linalg.norm(direction), k


@settings(max_examples=1000, deadline=None)
@given(gamma_in_ball())
def test_directions_reproduce_gamma(case):
    """Unit directions with ``k (x + y) = gamma`` and ``d1`` orthogonal to gamma."""
    gamma, k = case
    pair = directions_for_gamma(gamma, k)
    assert np.isclose(np.linalg.norm(pair.x_hat), 1.0, atol=1e-12)
    assert np.isclose(np.linalg.norm(pair.y_hat), 1.0, atol=1e-12)
    assert np.allclose(k * (pair.x_hat + pair.y_hat), gamma, atol=1e-12 * k)
    assert abs(np.dot(pair.d1, gamma)) <= 1e-12 * k


def test_zero_gamma_gives_antipodes():
    pair = directions_for_gamma(np.zeros(3), 4.0)
    assert np.allclose(pair.x_hat, [1.0, 0.0, 0.0])
    assert np.allclose(pair.y_hat, -pair.x_hat)


def test_batch_matches_single():
    gammas = np.array([[1.0, 2.0], [-3.0, 0.5], [0.0, 0.0]])
    x_hats, y_hats, _ = directions_for_gammas(gammas, 2.5)
    for gamma, x, y in zip(gammas, x_hats, y_hats):
        pair = directions_for_gamma(gamma, 2.5)
        assert np.allclose(pair.x_hat, x) and np.allclose(pair.y_hat, y)


def test_frequency_too_high():
    with pytest.raises(FrequencyTooHigh) as error:
        directions_for_gamma([4.1, 0.0], 2.0)
    assert error.value.code == 40
    assert directions_for_gamma([4.0, 0.0], 2.0).x_hat[0] == 1.0
