import numpy as np
import pytest


def naive_dct2(x):
    """Orthonormal DCT-II by direct summation."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    out = np.empty(n)
    for k in range(n):
        w = np.sqrt(1.0 / n) if k == 0 else np.sqrt(2.0 / n)
        acc = 0.0
        for i in range(n):
            acc += x[i] * np.cos(np.pi * (2 * i + 1) * k / (2 * n))
        out[k] = w * acc
    return out


def naive_idct2(s):
    """Synthesis ``x = Psi.T s`` by direct summation."""
    s = np.asarray(s, dtype=float)
    n = s.shape[0]
    out = np.empty(n)
    for i in range(n):
        acc = 0.0
        for k in range(n):
            w = np.sqrt(1.0 / n) if k == 0 else np.sqrt(2.0 / n)
            acc += w * s[k] * np.cos(np.pi * (2 * i + 1) * k / (2 * n))
        out[i] = acc
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
