"""Orthonormal DCT and random orthonormal sensing, step by step."""

import numpy as np

from scbp import compressive_sample, dct_forward, dct_inverse, gen_sensing_matrix, measurement_count

# A short "vowel-like" signal: two low-frequency cosines.
n = 64
t = np.arange(n)
x = 0.6 * np.cos(np.pi * 3 * (t + 0.5) / n) - 0.3 * np.cos(np.pi * 7 * (t + 0.5) / n)

# The orthonormal DCT-II concentrates it in two coefficients.
s = dct_forward(x)
print("largest DCT coefficients:", np.argsort(-np.abs(s))[:4])
print("energy kept by 2 coefficients: %.6f" % (np.sort(s**2)[-2:].sum() / (s @ s)))

# Orthonormality means the inverse is exact and energy is preserved.
print("roundtrip error:", np.max(np.abs(dct_inverse(s) - x)))
print("Parseval gap:   ", abs(np.linalg.norm(s) - np.linalg.norm(x)))

# A compression ratio of 5 keeps floor(64 / 5) = 12 measurements.
m = measurement_count(n, 5)
phi = gen_sensing_matrix(n, m, seed=2024)
print("sensing matrix:", phi.rows.shape, "rows orthonormal:",
      np.allclose(phi.rows @ phi.rows.T, np.eye(m)))

# Same seed, same matrix, bit for bit.
again = gen_sensing_matrix(n, m, seed=2024)
print("reproducible:", again.rows.tobytes() == phi.rows.tobytes())

b = compressive_sample(phi, x)
print("measurements:", np.round(b.values, 4))
