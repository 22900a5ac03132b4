"""Recover one synthetic block with BP and with SCBP."""

import numpy as np

from scbp import (
    SyntheticCorpusConfig,
    bp_recover,
    compressive_sample,
    gen_sensing_matrix,
    generate_synthetic_corpus,
    learn_envelope,
    measurement_count,
    nmse,
    scbp_recover,
)

# The synthetic corpus puts a few strong DCT coefficients in the lowest
# quarter of the band over a faint noise floor.
train, test = generate_synthetic_corpus(SyntheticCorpusConfig(n_train=200, n_test=5))
x = test[0].samples
n = x.shape[0]
m = measurement_count(n, 5)
print(f"block length {n}, {m} measurements")

# The envelope is the coefficient-wise min/max of the normalized training spectra.
env = learn_envelope(train, label="synthetic")
print(f"envelope from {env.training_count} blocks, mean width {env.width.mean():.4f}")

# Both methods see the same sensing matrix and measurements.
phi = gen_sensing_matrix(n, m, seed=7)
b = compressive_sample(phi, x)

bp = bp_recover(phi, b)
print(f"BP   status {bp.status.value:<8} NMSE {nmse(x, bp.x_hat):.4f}  "
      f"l1 norm {np.abs(bp.s_hat).sum():.3f}")

sc = scbp_recover(phi, b, env, epsilon=1e-3)
print(f"SCBP status {sc.status.value:<8} NMSE {nmse(x, sc.x_hat):.4f}  "
      f"alpha {sc.alpha:.3f}  residual l1 {sc.residual_l1:.2e}")

# alpha is the scale SCBP chose for the unit-norm envelope; compare it
# with the block's actual norm.
print(f"||x||_2 = {np.linalg.norm(x):.3f}")

# One block can favour either method; 04_small_campaign.py compares averages.
for i, blk in enumerate(test[1:], 1):
    bp_i = bp_recover(phi, compressive_sample(phi, blk))
    sc_i = scbp_recover(phi, compressive_sample(phi, blk), env, epsilon=1e-3)
    print(f"block {i}: BP NMSE {nmse(blk, bp_i.x_hat):.4f}   SCBP NMSE {nmse(blk, sc_i.x_hat):.4f}")
