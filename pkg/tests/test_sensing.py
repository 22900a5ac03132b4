import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from scbp.errors import ConfigError, InvalidDimensionError
from scbp.sensing import compressive_sample, gen_sensing_matrix, measurement_count


def gram_by_dot_products(rows):
    m = rows.shape[0]
    g = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            g[i, j] = sum(a * b for a, b in zip(rows[i], rows[j]))
    return g


def test_square_matrix_is_orthogonal():
    phi = gen_sensing_matrix(4, 4, seed=123)
    np.testing.assert_allclose(phi.rows.T @ phi.rows, np.eye(4), atol=1e-10)
    np.testing.assert_allclose(phi.rows @ phi.rows.T, np.eye(4), atol=1e-10)


def test_same_seed_same_bits():
    a = gen_sensing_matrix(64, 13, seed=7)
    b = gen_sensing_matrix(64, 13, seed=7)
    assert a.rows.tobytes() == b.rows.tobytes()
    assert (a.n, a.m, a.seed) == (64, 13, 7)


def test_different_seed_differs():
    a = gen_sensing_matrix(16, 4, seed=1)
    b = gen_sensing_matrix(16, 4, seed=2)
    assert not np.allclose(a.rows, b.rows)


def test_gram_against_explicit_dot_products():
    phi = gen_sensing_matrix(8, 3, seed=1)
    np.testing.assert_allclose(gram_by_dot_products(phi.rows), np.eye(3), atol=1e-10)


def test_matrix_is_read_only():
    phi = gen_sensing_matrix(8, 3, seed=1)
    with pytest.raises(ValueError):
        phi.rows[0, 0] = 1.0


@pytest.mark.parametrize("n,m", [(4, 5), (4, 0), (0, 0)])
def test_bad_dimensions(n, m):
    with pytest.raises(InvalidDimensionError):
        gen_sensing_matrix(n, m, 0)


def test_sample_zero_vector():
    phi = gen_sensing_matrix(10, 4, seed=3)
    b = compressive_sample(phi, np.zeros(10))
    assert np.all(b.values == 0)
    assert b.m == 4 and b.source_n == 10 and b.matrix_seed == 3


def test_single_row_is_dot_product(rng):
    phi = gen_sensing_matrix(6, 1, seed=9)
    x = rng.standard_normal(6)
    expected = sum(r * v for r, v in zip(phi.rows[0], x))
    assert compressive_sample(phi, x).values[0] == pytest.approx(expected, abs=1e-14)


def test_homogeneity(rng):
    phi = gen_sensing_matrix(32, 8, seed=5)
    x = rng.standard_normal(32)
    np.testing.assert_allclose(compressive_sample(phi, 2 * x).values,
                               2 * compressive_sample(phi, x).values, atol=1e-12)


def test_dimension_mismatch():
    phi = gen_sensing_matrix(8, 2, seed=0)
    with pytest.raises(InvalidDimensionError):
        compressive_sample(phi, np.ones(7))


@pytest.mark.parametrize("n,cr,m", [
    (1024, 5, 204),
    (1024, 1, 1024),
    (17, 1, 17),
    (3, 5, 1),
    (256, 5, 51),
    (10, 2.5, 4),
    (11, 1.1, 10),
    (10, Fraction(10, 3), 3),
    (10, "2.5", 4),
])
def test_measurement_count(n, cr, m):
    assert measurement_count(n, cr) == m


def test_measurement_count_rejects_expansion():
    with pytest.raises(ConfigError):
        measurement_count(10, 0.5)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 256), st.data())
def test_rows_orthonormal_and_projection_contracts(n, data):
    m = data.draw(st.integers(1, n))
    seed = data.draw(st.integers(0, 2**64 - 1))
    phi = gen_sensing_matrix(n, m, seed)
    assert np.max(np.abs(phi.rows @ phi.rows.T - np.eye(m))) <= 1e-10
    x = np.random.default_rng(seed % 1000).standard_normal(n)
    assert np.linalg.norm(compressive_sample(phi, x).values) <= np.linalg.norm(x) + 1e-10
