"""Learn an envelope, save it, reload it and resample it to a short block."""

from pathlib import Path
import tempfile

import numpy as np

from scbp import (
    SyntheticCorpusConfig,
    envelope_for_length,
    generate_synthetic_corpus,
    learn_envelope,
    load_envelope,
    normalized_profile,
    save_envelope,
)

train, test = generate_synthetic_corpus(SyntheticCorpusConfig(n_train=100, n_test=20, seed=3))
env = learn_envelope(train, label="synthetic", created_from="demo")

# Envelopes always live on a 1024-point grid; shorter blocks are stretched
# onto it before normalizing.
print("envelope length:", env.beta_l.shape[0])

# How many test coefficients fall inside the training envelope?
profiles = np.array([normalized_profile(b) for b in test])
inside = (profiles >= env.beta_l) & (profiles <= env.beta_u)
print(f"test coefficients inside the envelope: {inside.mean():.2%}")

with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "synthetic.env"
    save_envelope(env, path)
    print("file header:", path.read_text().splitlines()[:4])
    back = load_envelope(path)
    print("lossless reload:", back.beta_u.tobytes() == env.beta_u.tobytes())

# A 1-sample remainder block gets the envelope's first row.
lo, hi = envelope_for_length(env, 1)
print("bounds for n=1:", lo, hi)
lo, hi = envelope_for_length(env, 100)
print("bounds for n=100: first five upper values", np.round(hi[:5], 4))
