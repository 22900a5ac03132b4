"""Gaussian sensing matrices with orthonormal rows, and compressive sampling.

Matrices are drawn with NumPy's ``PCG64`` bit generator (via
:func:`numpy.random.default_rng`) so that ``(n, m, seed)`` fully determines
the result within one NumPy build.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from ._util import as_vector
from .errors import ConfigError, InvalidDimensionError

__all__ = [
    "SensingMatrix",
    "MeasurementVector",
    "gen_sensing_matrix",
    "compressive_sample",
    "measurement_count",
]

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class SensingMatrix:
    """An ``m x n`` matrix with orthonormal rows and the seed it came from."""

    rows: np.ndarray
    seed: int

    @property
    def n(self):
        return self.rows.shape[1]

    @property
    def m(self):
        return self.rows.shape[0]


@dataclass(frozen=True, eq=False)
class MeasurementVector:
    values: np.ndarray
    source_n: int
    matrix_seed: int

    @property
    def m(self):
        return self.values.shape[0]


def gen_sensing_matrix(n, m, seed):
    """Draw an ``m x n`` sensing matrix with orthonormal rows.

    An ``n x n`` standard Gaussian matrix is factored with Householder QR
    (LAPACK ``geqrf``); the first ``m`` rows of ``Q.T`` are kept.

    Parameters
    ----------
    n, m : int
        Block length and number of measurements, ``1 <= m <= n``.
    seed : int
        Reduced modulo ``2**64``.

    Returns
    -------
    SensingMatrix
    """
    n = int(n)
    m = int(m)
    if n < 1 or m < 1 or m > n:
        raise InvalidDimensionError(f"need 1 <= m <= n, got n={n}, m={m}")
    seed = int(seed) & _SEED_MASK
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal((n, n))
    q, _ = np.linalg.qr(gauss)
    rows = np.ascontiguousarray(q.T[:m])
    rows.setflags(write=False)
    return SensingMatrix(rows=rows, seed=seed)


def compressive_sample(phi, block):
    """Measurements ``b = phi.rows @ x``."""
    x = as_vector(block, "block")
    if x.shape[0] != phi.n:
        raise InvalidDimensionError(
            f"block length {x.shape[0]} does not match sensing matrix width {phi.n}")
    return MeasurementVector(values=phi.rows @ x, source_n=phi.n, matrix_seed=phi.seed)


def measurement_count(n, cr):
    """Number of measurements ``max(1, floor(n / cr))`` for compression ratio ``cr``.

    ``cr`` may be an int, a :class:`~fractions.Fraction`, a float or a decimal
    string; floats are read through their shortest decimal repr so that e.g.
    ``cr=2.2`` behaves like ``11/5``.
    """
    n = int(n)
    if n < 1:
        raise ConfigError(f"block length must be >= 1, got {n}")
    if isinstance(cr, float):
        ratio = Fraction(repr(cr))
    else:
        ratio = Fraction(cr)
    if ratio < 1:
        raise ConfigError(f"compression ratio must be >= 1, got {cr}")
    return max(1, math.floor(n / ratio))
