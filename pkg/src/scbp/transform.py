"""Orthonormal DCT-II analysis and its DCT-III synthesis pair.

The basis matrix ``Psi`` has rows ``Psi[k, i] = w_k cos(pi (2 i + 1) k / (2 n))``
with ``w_0 = sqrt(1/n)`` and ``w_k = sqrt(2/n)`` otherwise, so that
``Psi @ Psi.T == I`` and the inverse transform is ``Psi.T``.
"""

import numpy as np
import scipy.fft

from ._util import as_vector

__all__ = ["dct_forward", "dct_inverse", "dct_matrix"]


def dct_forward(block):
    """Coefficients ``s = Psi x`` of a time-domain block.

    Parameters
    ----------
    block : array_like or SignalBlock
        Length-``n`` real samples, ``n >= 1``.

    Returns
    -------
    ndarray
        Length-``n`` DCT-II coefficients (orthonormal scaling).
    """
    x = as_vector(block, "block")
    return scipy.fft.dct(x, type=2, norm="ortho")


def dct_inverse(coeffs):
    """Time-domain samples ``x = Psi.T s`` for coefficient vector ``s``."""
    s = as_vector(coeffs, "coeffs")
    return scipy.fft.idct(s, type=2, norm="ortho")


def dct_matrix(n):
    """Dense ``n x n`` orthonormal DCT-II matrix ``Psi``."""
    return scipy.fft.dct(np.eye(n), type=2, norm="ortho", axis=0)
