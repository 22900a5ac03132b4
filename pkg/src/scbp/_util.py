import numpy as np

from .errors import InvalidInputError


def as_vector(x, name="x", allow_empty=False):
    """Return ``x`` (array-like or anything with ``.samples``) as a 1-D float array."""
    x = getattr(x, "samples", x)
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {v.shape}")
    if v.size == 0 and not allow_empty:
        raise InvalidInputError(f"{name} is empty")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return v
