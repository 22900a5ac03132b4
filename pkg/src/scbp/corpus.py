"""Signal blocks, audio/transcript ingest and a synthetic structured corpus.

Audio is read from 16-bit PCM mono WAV (or headerless PCM with an explicit
rate).  TIMIT ships NIST SPHERE audio; convert it to WAV first, e.g.
``sox SA1.WAV SA1.wav``.  Transcripts use the TIMIT ``.PHN`` layout
``<start> <end> <label>`` with sample indices, ``end`` exclusive.
"""

from dataclasses import dataclass
import logging
import os
from pathlib import Path
import wave

import numpy as np

from ._util import as_vector
from .errors import ConfigError, FormatError, InvalidInputError, ParseError
from .transform import dct_inverse

__all__ = [
    "BLOCK_LENGTH",
    "SignalBlock",
    "PhonemeSegment",
    "SyntheticCorpusConfig",
    "read_audio",
    "write_wav",
    "parse_transcript",
    "extract_phoneme",
    "split_blocks",
    "read_manifest",
    "scan_timit",
    "load_phoneme_vectors",
    "generate_synthetic_corpus",
]

log = logging.getLogger(__name__)

BLOCK_LENGTH = 1024
PCM_SCALE = 32768.0


@dataclass(frozen=True, eq=False)
class SignalBlock:
    """Real time-domain samples plus where they came from."""

    samples: np.ndarray
    sample_rate: int = 16000
    source_id: str = ""
    phoneme_label: str = None

    def __post_init__(self):
        v = as_vector(self.samples, "samples")
        v.setflags(write=False)
        object.__setattr__(self, "samples", v)

    def __len__(self):
        return self.samples.shape[0]

    @property
    def n(self):
        return self.samples.shape[0]


@dataclass(frozen=True)
class PhonemeSegment:
    start_sample: int
    end_sample: int
    label: str

    def __post_init__(self):
        if not 0 <= self.start_sample < self.end_sample:
            raise InvalidInputError(
                f"segment needs 0 <= start < end, got {self.start_sample}..{self.end_sample}")
        if not self.label:
            raise InvalidInputError("segment label is empty")


@dataclass(frozen=True)
class SyntheticCorpusConfig:
    """Parameters of the synthetic low-frequency-structured corpus.

    Each block has ``sparsity`` active DCT coefficients at random indices
    below ``band_fraction * block_length``, with magnitudes uniform on
    ``[0.5, 1]`` and random signs.  Every other coefficient is Gaussian with
    standard deviation ``noise_floor``.  The time signal is then scaled to a
    random peak amplitude in ``[0.2, 0.9]``.
    """

    n_train: int = 200
    n_test: int = 50
    block_length: int = 256
    sparsity: int = 10
    band_fraction: float = 0.25
    noise_floor: float = 0.01
    seed: int = 0

    def validate(self):
        if self.n_train < 0 or self.n_test < 0:
            raise ConfigError("n_train and n_test must be non-negative")
        if not 1 <= self.block_length <= BLOCK_LENGTH:
            raise ConfigError(f"block_length must be in 1..{BLOCK_LENGTH}, got {self.block_length}")
        if not 0 < self.band_fraction <= 1:
            raise ConfigError(f"band_fraction must be in (0, 1], got {self.band_fraction}")
        if self.noise_floor < 0:
            raise ConfigError(f"noise_floor must be >= 0, got {self.noise_floor}")
        band = self.band_width
        if not 1 <= self.sparsity <= band:
            raise ConfigError(
                f"sparsity must be in 1..{band} (band of block_length * band_fraction), got {self.sparsity}")
        return self

    @property
    def band_width(self):
        return max(1, int(self.band_fraction * self.block_length))


# ---------------------------------------------------------------------------
# audio


def read_audio(path, sample_rate=None, raw=None, source_id=None):
    """Read 16-bit mono PCM audio scaled to ``[-1, 1)``.

    Parameters
    ----------
    path : path-like
    sample_rate : int, optional
        Required for headerless PCM; ignored for WAV.
    raw : bool, optional
        Treat the file as headerless little-endian int16.  Defaults to
        ``True`` for ``.raw``/``.pcm`` suffixes.

    Returns
    -------
    SignalBlock
        The whole recording.
    """
    path = Path(path)
    if source_id is None:
        source_id = path.stem
    if raw is None:
        raw = path.suffix.lower() in (".raw", ".pcm")
    if raw:
        if not sample_rate:
            raise FormatError(f"{path}: headerless PCM needs an explicit sample rate")
        data = np.fromfile(path, dtype="<i2")
        return SignalBlock(data / PCM_SCALE, int(sample_rate), source_id)

    with open(path, "rb") as f:
        head = f.read(12)
    if head[:4] == b"NIST":
        raise FormatError(f"{path}: header 'NIST_1A' (SPHERE) is not supported; convert to WAV")
    if head[:4] != b"RIFF" or head[8:12] != b"WAVE":
        raise FormatError(f"{path}: RIFF/WAVE header missing")
    try:
        with wave.open(str(path), "rb") as w:
            channels = w.getnchannels()
            width = w.getsampwidth()
            rate = w.getframerate()
            frames = w.readframes(w.getnframes())
    except wave.Error as e:
        raise FormatError(f"{path}: fmt audio_format unsupported ({e})") from None
    if channels != 1:
        raise FormatError(f"{path}: fmt num_channels={channels}, only mono is supported")
    if width != 2:
        raise FormatError(f"{path}: fmt bits_per_sample={8 * width}, only 16 is supported")
    data = np.frombuffer(frames, dtype="<i2")
    if data.size == 0:
        raise FormatError(f"{path}: data chunk is empty")
    return SignalBlock(data / PCM_SCALE, rate, source_id)


def write_wav(path, samples, sample_rate=16000):
    """Write samples in ``[-1, 1]`` as 16-bit mono PCM (values clipped)."""
    x = as_vector(samples, "samples")
    q = np.clip(np.round(x * PCM_SCALE), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(int(sample_rate))
        w.writeframes(q.tobytes())


# ---------------------------------------------------------------------------
# transcripts and segmentation


def parse_transcript(path):
    """Parse a ``.PHN`` file into segments, sorted by start sample."""
    path = os.fspath(path)
    segments = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 3:
                raise ParseError(f"expected '<start> <end> <label>', got {line.strip()!r}", path, lineno)
            try:
                start, end = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"non-integer sample index in {line.strip()!r}", path, lineno) from None
            if start < 0 or start >= end:
                raise ParseError(f"need 0 <= start < end, got {start} {end}", path, lineno)
            segments.append(PhonemeSegment(start, end, parts[2]))
    segments.sort(key=lambda s: s.start_sample)
    return segments


def extract_phoneme(audio, segments, label):
    """One block per segment whose label equals ``label``."""
    x = audio.samples
    out = []
    for seg in segments:
        if seg.label != label:
            continue
        if seg.end_sample > x.shape[0]:
            raise InvalidInputError(
                f"segment {seg.start_sample}-{seg.end_sample} {seg.label!r} exceeds "
                f"audio length {x.shape[0]} of {audio.source_id!r}")
        out.append(SignalBlock(x[seg.start_sample:seg.end_sample], audio.sample_rate,
                               f"{audio.source_id}:{seg.start_sample}-{seg.end_sample}", label))
    return out


def split_blocks(vector, block_length=BLOCK_LENGTH):
    """Cut into consecutive ``block_length`` blocks plus a shorter remainder."""
    if isinstance(vector, SignalBlock):
        x, rate, sid, label = vector.samples, vector.sample_rate, vector.source_id, vector.phoneme_label
    else:
        x, rate, sid, label = as_vector(vector, "vector"), 16000, "", None
    if x.size == 0:
        raise InvalidInputError("cannot split an empty vector")
    return [SignalBlock(x[i:i + block_length], rate, f"{sid}#{i // block_length}", label)
            for i in range(0, x.shape[0], block_length)]


def read_manifest(path):
    """``(audio, transcript)`` path pairs; relative paths resolve against the manifest's directory."""
    path = Path(path)
    base = path.parent
    pairs = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected '<audio-path> <transcript-path>', got {line!r}", path, lineno)
            pairs.append((base / parts[0], base / parts[1]))
    return pairs


_WAV_SUFFIXES = (".wav", ".WAV.wav", ".riff.wav", ".RIFF.WAV", ".WAV")


def scan_timit(root, partition):
    """Pair every ``.PHN`` under ``root/<partition>`` with a converted RIFF WAV.

    Transcripts without a RIFF sibling are skipped with a warning.
    """
    root = Path(root)
    part_dir = next((p for p in (root / partition, root / partition.lower(), root / partition.upper())
                     if p.is_dir()), None)
    if part_dir is None:
        raise ConfigError(f"no '{partition}' directory under {root}")
    pairs = []
    missing = 0
    for phn in sorted(part_dir.rglob("*")):
        if phn.suffix.upper() != ".PHN":
            continue
        stem = phn.with_suffix("")
        for suffix in _WAV_SUFFIXES:
            cand = stem.parent / (stem.name + suffix)
            if cand.is_file():
                with open(cand, "rb") as f:
                    if f.read(4) == b"RIFF":
                        pairs.append((cand, phn))
                        break
        else:
            missing += 1
    if missing:
        log.warning("%d transcript(s) under %s have no RIFF WAV sibling", missing, part_dir)
    return pairs


def load_phoneme_vectors(pairs, label):
    """Every ``label`` segment across ``(audio, transcript)`` pairs, as whole vectors."""
    vectors = []
    for audio_path, phn_path in pairs:
        audio = read_audio(audio_path, source_id=str(Path(audio_path).with_suffix("")))
        vectors.extend(extract_phoneme(audio, parse_transcript(phn_path), label))
    return vectors


# ---------------------------------------------------------------------------
# synthetic corpus


def _synthetic_block(rng, cfg, source_id):
    n = cfg.block_length
    coeffs = cfg.noise_floor * rng.standard_normal(n)
    idx = rng.choice(cfg.band_width, size=cfg.sparsity, replace=False)
    signs = rng.choice([-1.0, 1.0], size=cfg.sparsity)
    coeffs[idx] = signs * rng.uniform(0.5, 1.0, size=cfg.sparsity)
    x = dct_inverse(coeffs)
    peak = np.max(np.abs(x))
    x = x * (rng.uniform(0.2, 0.9) / peak)
    return SignalBlock(x, 16000, source_id, "synthetic")


def generate_synthetic_corpus(cfg=None):
    """Deterministic ``(train, test)`` block lists for ``cfg``.

    Train and test come from independent child streams of ``cfg.seed``.
    """
    cfg = (cfg or SyntheticCorpusConfig()).validate()
    train_seq, test_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    train_rng = np.random.default_rng(train_seq)
    test_rng = np.random.default_rng(test_seq)
    train = [_synthetic_block(train_rng, cfg, f"synth-train-{i:04d}") for i in range(cfg.n_train)]
    test = [_synthetic_block(test_rng, cfg, f"synth-test-{i:04d}") for i in range(cfg.n_test)]
    return train, test
