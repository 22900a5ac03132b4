"""Per-coefficient bound envelopes learned from example blocks.

Each training block is taken to the DCT domain, linearly interpolated onto a
fixed 1024-point grid and scaled to unit l2 norm.  The envelope is the
column-wise minimum and maximum of those rows.
"""

from dataclasses import dataclass
import logging
import os

import numpy as np

from ._util import as_vector
from .errors import InvalidInputError, ParseError, UnsupportedSizeError
from .transform import dct_forward

__all__ = [
    "ENVELOPE_LENGTH",
    "StructureEnvelope",
    "normalized_profile",
    "learn_envelope",
    "resample_to",
    "envelope_for_length",
    "save_envelope",
    "load_envelope",
]

log = logging.getLogger(__name__)

ENVELOPE_LENGTH = 1024


@dataclass(frozen=True, eq=False)
class StructureEnvelope:
    beta_l: np.ndarray
    beta_u: np.ndarray
    label: str = ""
    training_count: int = 0
    created_from: str = ""

    def __post_init__(self):
        lo = as_vector(self.beta_l, "beta_l")
        hi = as_vector(self.beta_u, "beta_u")
        if lo.shape != (ENVELOPE_LENGTH,) or hi.shape != (ENVELOPE_LENGTH,):
            raise InvalidInputError(
                f"envelope bounds must have length {ENVELOPE_LENGTH}, got {lo.shape[0]} and {hi.shape[0]}")
        if np.any(lo > hi):
            j = int(np.flatnonzero(lo > hi)[0])
            raise InvalidInputError(f"beta_l > beta_u at index {j}")
        object.__setattr__(self, "beta_l", lo)
        object.__setattr__(self, "beta_u", hi)

    @property
    def width(self):
        return self.beta_u - self.beta_l

    def contains(self, profile, atol=0.0):
        profile = np.asarray(profile)
        return bool(np.all(profile >= self.beta_l - atol) and np.all(profile <= self.beta_u + atol))


def resample_to(coeffs, target):
    """Linearly interpolate ``coeffs`` onto ``target`` points.

    The first and last samples of the input map onto the first and last
    output samples.  A length-1 input yields a constant vector and
    ``len(coeffs) == target`` returns an unchanged copy.
    """
    v = as_vector(coeffs, "coeffs")
    target = int(target)
    if target < 1:
        raise InvalidInputError(f"target length must be positive, got {target}")
    k = v.shape[0]
    if k == target:
        return v.copy()
    if k == 1:
        return np.full(target, v[0])
    grid = np.linspace(0.0, k - 1.0, target)
    return np.interp(grid, np.arange(k, dtype=float), v)


def normalized_profile(block):
    """DCT, resample to 1024 points, scale to unit l2 norm.

    Returns ``None`` for an all-zero block.
    """
    s = resample_to(dct_forward(block), ENVELOPE_LENGTH)
    norm = np.linalg.norm(s)
    if norm == 0.0:
        return None
    return s / norm


def learn_envelope(training_blocks, label="", created_from=""):
    """Column-wise min/max envelope over the normalized profiles of ``training_blocks``.

    All-zero blocks are skipped with a warning.  ``training_count`` counts
    the blocks actually used.
    """
    lo = None
    hi = None
    count = 0
    skipped = 0
    for block in training_blocks:
        g = normalized_profile(block)
        if g is None:
            skipped += 1
            continue
        if lo is None:
            lo, hi = g.copy(), g.copy()
        else:
            np.minimum(lo, g, out=lo)
            np.maximum(hi, g, out=hi)
        count += 1
    if skipped:
        log.warning("skipped %d all-zero training block(s) for label %r", skipped, label)
    if count == 0:
        raise InvalidInputError("no usable (nonzero) training blocks")
    return StructureEnvelope(beta_l=lo, beta_u=hi, label=label,
                             training_count=count, created_from=created_from)


def envelope_for_length(env, n):
    """Bounds of ``env`` resampled to length ``n``, reordered where they cross."""
    n = int(n)
    if n < 1:
        raise InvalidInputError(f"block length must be positive, got {n}")
    if n > ENVELOPE_LENGTH:
        raise UnsupportedSizeError(f"block length {n} exceeds {ENVELOPE_LENGTH}")
    lo = resample_to(env.beta_l, n)
    hi = resample_to(env.beta_u, n)
    return np.minimum(lo, hi), np.maximum(lo, hi)


def save_envelope(env, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"label={env.label}\n")
        f.write(f"training_count={env.training_count}\n")
        f.write(f"created_from={env.created_from}\n")
        f.write(f"length={ENVELOPE_LENGTH}\n")
        for lo, hi in zip(env.beta_l, env.beta_u):
            f.write(f"{float(lo)!r} {float(hi)!r}\n")


def load_envelope(path):
    """Read an envelope written by :func:`save_envelope`.

    Raises
    ------
    ParseError
        On malformed headers or data lines, a wrong row count, or a row with
        ``beta_l > beta_u``.
    """
    path = os.fspath(path)
    header = {}
    rows = []
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    lineno = 0
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        if not rows and "=" in line:
            key, _, value = line.partition("=")
            header[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<beta_l> <beta_u>', got {line!r}", path, lineno)
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(f"non-numeric bound in {line!r}", path, lineno) from None
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ParseError("non-finite bound", path, lineno)
        if lo > hi:
            raise ParseError(f"beta_l {lo!r} > beta_u {hi!r}", path, lineno)
        rows.append((lo, hi))

    for key in ("label", "training_count", "length"):
        if key not in header:
            raise ParseError(f"missing header '{key}'", path)
    try:
        length = int(header["length"])
        training_count = int(header["training_count"])
    except ValueError:
        raise ParseError("length and training_count must be integers", path) from None
    if length != ENVELOPE_LENGTH:
        raise ParseError(f"length={length}, only {ENVELOPE_LENGTH} is supported", path)
    if len(rows) != length:
        raise ParseError(f"expected {length} data rows, found {len(rows)}", path, lineno or None)
    data = np.array(rows)
    return StructureEnvelope(beta_l=data[:, 0], beta_u=data[:, 1], label=header["label"],
                             training_count=training_count,
                             created_from=header.get("created_from", ""))
