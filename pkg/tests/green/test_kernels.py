from hypothesis import assume, given, settings, strategies as st
import numpy as np
import pytest
from scipy import special

from sourcelab.green.errors import CoincidentPoints
from sourcelab.green import (
    helmholtz_green,
    polyharmonic_green,
    resolvent_symbol,
    split_resolvent_symbol,
    split_wavenumbers,
)


@settings(max_examples=1000, deadline=None)
@given(
    ratio=st.floats(0.0, 3.0),
    k=st.floats(1.5, 10.0),
    n=st.integers(1, 4),
)
def test_partial_fraction_identity(ratio, k, n):
    """The polyharmonic resolvent equals the sum of its Helmholtz parts."""
    xi = ratio * k
    assume(abs(xi ** (2 * n) - k ** (2 * n)) > 1e-3 * k ** (2 * n))
    exact = resolvent_symbol(xi, k, n)
    split = split_resolvent_symbol(xi, k, n)
    assert abs(split - exact) <= 1e-10 * abs(exact)


def test_split_wavenumbers_are_roots():
    """``kappa_j^{2n} = k^{2n}`` and the first is k itself."""
    split = split_wavenumbers(3.0, 4)
    assert split.values[0] == 3.0
    for kappa in split.values:
        assert np.isclose(kappa ** 8, 3.0 ** 8)
    assert np.isclose(sum(split.weights), 0.0)


def test_helmholtz_green_two_dimensions():
    """``(i/4) H_0^(1)(kappa r)`` in the plane."""
    x = np.array([[0.3, 0.4], [2.0, -1.0]])
    y = np.zeros(2)
    r = np.linalg.norm(x, axis=-1)
    expected = 0.25j * special.hankel1(0, 5.0 * r)
    assert np.allclose(helmholtz_green(x, y, 5.0, 2), expected, rtol=1e-7)


def test_helmholtz_green_three_dimensions():
    x = np.array([0.0, 0.0, 2.0])
    value = helmholtz_green(x, np.zeros(3), 1.5, 3)
    assert np.isclose(value, np.exp(3.0j) / (8.0 * np.pi))


@pytest.mark.parametrize("d", [2, 3])
def test_first_order_is_helmholtz(d):
    """For n = 1 the polyharmonic kernel is the Helmholtz kernel."""
    x = np.ones(d)
    y = np.zeros(d)
    assert np.isclose(polyharmonic_green(x, y, 4.0, 1, d), helmholtz_green(x, y, 4.0, d))


@pytest.mark.parametrize("r", [1.8, 2.0, 2.2, 2.4])
def test_decaying_branch_two_dimensions(r):
    """The ``kappa = ik`` component keeps 1e-7 accuracy for |kappa r| in (8, 12]."""
    x = np.array([r, 0.0])
    value = helmholtz_green(x, np.zeros(2), 5.0j, 2)
    expected = 0.25j * special.hankel1(0, 5.0j * r)
    assert abs(value - expected) <= 1e-7 * abs(expected)

    split = split_wavenumbers(5.0, 2)
    total = sum(
        weight * 0.25j * special.hankel1(0, kappa * r)
        for weight, kappa in zip(split.weights, split.values)
    )
    assert np.isclose(polyharmonic_green(x, np.zeros(2), 5.0, 2, 2), total, rtol=1e-7)


def test_broadcasting():
    targets = np.ones((5, 1, 3))
    sources = np.zeros((1, 7, 3))
    assert polyharmonic_green(targets, sources, 2.0, 2, 3).shape == (5, 7)


def test_coincident_points():
    with pytest.raises(CoincidentPoints) as error:
        helmholtz_green(np.zeros(3), np.zeros(3), 1.0, 3)
    assert error.value.code == 21
