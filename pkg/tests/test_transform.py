import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from scbp.corpus import SignalBlock
from scbp.errors import InvalidInputError
from scbp.transform import dct_forward, dct_inverse, dct_matrix

from conftest import naive_dct2, naive_idct2


def test_constant_maps_to_dc():
    s = dct_forward(np.ones(8))
    expected = np.zeros(8)
    expected[0] = np.sqrt(8)
    np.testing.assert_allclose(s, expected, atol=1e-12)


def test_zero_maps_to_zero():
    assert np.all(dct_forward(np.zeros(5)) == 0)


def test_impulse_matches_naive_column():
    e0 = np.array([1.0, 0, 0, 0])
    np.testing.assert_allclose(dct_forward(e0), naive_dct2(e0), atol=1e-12)


def test_inverse_of_dc():
    s = np.zeros(8)
    s[0] = np.sqrt(8)
    np.testing.assert_allclose(dct_inverse(s), np.ones(8), atol=1e-12)


def test_inverse_unit_coefficient_matches_naive():
    e1 = np.array([0.0, 1.0, 0, 0])
    np.testing.assert_allclose(dct_inverse(e1), naive_idct2(e1), atol=1e-12)


def test_accepts_signal_block():
    blk = SignalBlock(np.linspace(-0.5, 0.5, 16))
    np.testing.assert_allclose(dct_forward(blk), naive_dct2(blk.samples), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 33, 64])
def test_agrees_with_naive_oracle(n, rng):
    x = rng.standard_normal(n)
    np.testing.assert_allclose(dct_forward(x), naive_dct2(x), rtol=0, atol=1e-9)
    np.testing.assert_allclose(dct_inverse(x), naive_idct2(x), rtol=0, atol=1e-9)


@pytest.mark.parametrize("n", [1, 2, 100, 1024])
def test_roundtrip(n, rng):
    for _ in range(100):
        x = rng.standard_normal(n)
        assert np.max(np.abs(dct_inverse(dct_forward(x)) - x)) <= 1e-10


def test_matrix_is_orthonormal():
    psi = dct_matrix(32)
    np.testing.assert_allclose(psi @ psi.T, np.eye(32), atol=1e-12)
    x = np.arange(32.0)
    np.testing.assert_allclose(psi @ x, dct_forward(x), atol=1e-10)


@pytest.mark.parametrize("bad", [[], np.zeros((2, 2)), [1.0, np.nan], [np.inf]])
def test_rejects_bad_input(bad):
    with pytest.raises(InvalidInputError):
        dct_forward(bad)
    with pytest.raises(InvalidInputError):
        dct_inverse(bad)


finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 1024).flatmap(lambda n: arrays(float, n, elements=finite)))
def test_parseval(x):
    nx = np.linalg.norm(x)
    ns = np.linalg.norm(dct_forward(x))
    assert abs(ns - nx) <= 1e-10 * max(nx, 1e-300) or nx == 0 == ns


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 256).flatmap(
    lambda n: st.tuples(arrays(float, n, elements=finite), arrays(float, n, elements=finite))),
    finite, finite)
def test_linearity(xy, a, b):
    x, y = xy
    lhs = dct_forward(a * x + b * y)
    rhs = a * dct_forward(x) + b * dct_forward(y)
    scale = max(1.0, np.abs(a * x).max() + np.abs(b * y).max()) * np.sqrt(len(x))
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-10 * scale)
