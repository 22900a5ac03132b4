"""BP vs SCBP comparison campaigns.

A campaign compressively samples every test block ``trials_per_vector``
times, recovers each sample with the requested methods and aggregates the
normalized mean squared error.  With ``paired = true`` (default) both methods
see the same sensing matrix and measurements in a given trial.

Output files written by :func:`write_report`:

``trials.csv``
    ``vector_id,block_index,n,m,method,seed,status,nmse,alpha``, sorted by
    ``(vector_id, block_index, trial, method)``.  Empty ``nmse``/``alpha``
    cells mean "not available".
``summary.txt``
    Mean and population variance per method and the relative improvement.
``histogram.csv``
    ``bin_low,bin_high,count_bp,count_scbp``; the last row (``1,inf``) is the
    overflow bin, which also receives failed trials.
``timings.csv``
    Wall-clock solve time per trial.  Kept apart from ``trials.csv`` so that
    file stays bit-reproducible.
"""

from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import dataclass, field, fields
import logging
import math
import os
from pathlib import Path
import time
import zlib

import numpy as np

from ._util import as_vector
from .corpus import (
    SyntheticCorpusConfig,
    generate_synthetic_corpus,
    load_phoneme_vectors,
    read_manifest,
    scan_timit,
    split_blocks,
)
from .errors import ConfigError, InvalidDimensionError, ParseError, UndefinedMetricError
from .lp import LpStatus
from .recovery import bp_recover, scbp_recover
from .sensing import compressive_sample, gen_sensing_matrix, measurement_count
from .structure import learn_envelope, load_envelope

__all__ = [
    "METHODS",
    "ExperimentConfig",
    "TrialRecord",
    "MethodStats",
    "ExperimentReport",
    "nmse",
    "trial_seed",
    "load_campaign",
    "run_trials",
    "run_experiment",
    "aggregate",
    "write_report",
    "read_trials",
]

log = logging.getLogger(__name__)

METHODS = ("bp", "scbp")
_SEED_MASK = (1 << 64) - 1


def nmse(x, x_hat):
    """``sum((x - x_hat)**2) / sum(x**2)``."""
    x = as_vector(x, "x")
    x_hat = as_vector(x_hat, "x_hat")
    if x.shape != x_hat.shape:
        raise InvalidDimensionError(f"length mismatch: {x.shape[0]} vs {x_hat.shape[0]}")
    energy = float(x @ x)
    if energy == 0.0:
        raise UndefinedMetricError("reference signal has zero energy")
    d = x - x_hat
    return float(d @ d) / energy


# ---------------------------------------------------------------------------
# configuration


def _parse_bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_ratio(text):
    v = float(text)
    return int(v) if v.is_integer() else v


@dataclass
class ExperimentConfig:
    """Every campaign knob; each field is also a key of the config file."""

    cr: float = 5
    epsilon: float = 0.001
    trials_per_vector: int = 100
    base_seed: int = 0
    methods: str = "both"
    envelope: str = None
    corpus: str = "synthetic"
    manifest: str = None
    timit_dir: str = None
    partition: str = "TEST"
    train_partition: str = "TRAIN"
    label: str = "aa"
    max_vectors: int = 0
    n_train: int = 200
    n_test: int = 50
    block_length: int = 256
    sparsity: int = 10
    band_fraction: float = 0.25
    noise_floor: float = 0.01
    synthetic_seed: int = 0
    sensing_mode: str = "fresh"
    paired: bool = True
    histogram_bins: int = 20
    alpha_weight: float = 1.0

    _parsers = {
        "cr": _parse_ratio, "epsilon": float, "trials_per_vector": int, "base_seed": int,
        "max_vectors": int, "n_train": int, "n_test": int, "block_length": int,
        "sparsity": int, "band_fraction": float, "noise_floor": float,
        "synthetic_seed": int, "paired": _parse_bool, "histogram_bins": int,
        "alpha_weight": float,
    }

    @property
    def method_list(self):
        return METHODS if self.methods == "both" else (self.methods,)

    @property
    def synthetic(self):
        return SyntheticCorpusConfig(
            n_train=self.n_train, n_test=self.n_test, block_length=self.block_length,
            sparsity=self.sparsity, band_fraction=self.band_fraction,
            noise_floor=self.noise_floor, seed=self.synthetic_seed)

    def validate(self):
        try:
            measurement_count(1, self.cr)
        except (ConfigError, ValueError, TypeError, ZeroDivisionError) as e:
            raise ConfigError(f"cr: {e}") from None
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.trials_per_vector < 1:
            raise ConfigError("trials_per_vector must be >= 1")
        if self.methods not in ("both",) + METHODS:
            raise ConfigError(f"methods must be one of both, bp, scbp; got {self.methods!r}")
        if self.sensing_mode not in ("fresh", "fixed"):
            raise ConfigError(f"sensing_mode must be 'fresh' or 'fixed', got {self.sensing_mode!r}")
        if self.corpus not in ("synthetic", "manifest", "timit"):
            raise ConfigError(f"corpus must be synthetic, manifest or timit; got {self.corpus!r}")
        if self.corpus == "manifest" and not self.manifest:
            raise ConfigError("corpus = manifest needs a 'manifest' path")
        if self.corpus == "timit" and not self.timit_dir:
            raise ConfigError("corpus = timit needs 'timit_dir'")
        if "scbp" in self.method_list:
            if not self.envelope:
                raise ConfigError("method scbp needs 'envelope' (a file path or 'learn')")
            if self.envelope == "learn" and self.corpus == "manifest":
                raise ConfigError("envelope = learn needs a synthetic or timit corpus")
            if self.envelope != "learn" and not os.path.isfile(self.envelope):
                raise ConfigError(f"envelope file not found: {self.envelope}")
        if self.histogram_bins < 1:
            raise ConfigError("histogram_bins must be >= 1")
        if self.max_vectors < 0:
            raise ConfigError("max_vectors must be >= 0")
        if self.corpus == "synthetic":
            self.synthetic.validate()
        return self

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_text(cls, text, source="<config>", base_dir=None):
        """Parse ``key = value`` lines; ``#`` starts a comment.

        Relative ``envelope``, ``manifest`` and ``timit_dir`` paths are
        resolved against ``base_dir``.
        """
        known = set(cls.keys())
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key:
                raise ParseError(f"expected 'key = value', got {raw.strip()!r}", source, lineno)
            if key not in known:
                raise ConfigError(f"{source}:{lineno}: unknown config key '{key}'")
            parse = cls._parsers.get(key, str)
            try:
                values[key] = parse(value)
            except ValueError as e:
                raise ConfigError(f"{source}:{lineno}: bad value for '{key}': {e}") from None
            if key in ("envelope", "manifest", "timit_dir") and base_dir is not None \
                    and value != "learn" and not os.path.isabs(value):
                values[key] = os.path.normpath(os.path.join(base_dir, value))
        return cls(**values)

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from None
        return cls.from_text(text, str(path), base_dir=str(path.parent))

    def to_text(self):
        lines = []
        for k in self.keys():
            v = getattr(self, k)
            if v is None:
                continue
            if isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"{k} = {v}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# records and aggregation


@dataclass
class TrialRecord:
    vector_id: str
    block_index: int
    n: int
    m: int
    method: str
    seed: int
    status: str
    nmse: float = None
    alpha: float = None
    trial: int = 0
    solve_time: float = 0.0

    @property
    def ok(self):
        return self.status == LpStatus.OPTIMAL.value

    def sort_key(self):
        return (self.vector_id, self.block_index, self.trial, METHODS.index(self.method))


@dataclass
class MethodStats:
    trials: int
    failures: int
    mean: float = None
    variance: float = None
    counts: list = field(default_factory=list)


@dataclass
class ExperimentReport:
    methods: dict
    bin_edges: np.ndarray
    improvement_mean: float = None
    improvement_variance: float = None
    records: list = field(default_factory=list, repr=False)
    config: ExperimentConfig = None
    m_values: tuple = ()


def _improvement(ref, new):
    if ref is None or new is None or ref == 0:
        return None
    return (ref - new) / ref * 100.0


def aggregate(records, bins=20):
    """Per-method moments over optimal trials and an NMSE histogram.

    Means and population variances ignore failed trials; the histogram has
    ``bins`` uniform bins on ``[0, 1)`` plus an overflow bin holding
    ``nmse >= 1`` and every failure.
    """
    records = list(records)
    edges = np.linspace(0.0, 1.0, bins + 1)
    methods = {}
    for method in METHODS:
        recs = [r for r in records if r.method == method]
        if not recs:
            continue
        vals = np.array([r.nmse for r in recs if r.ok], dtype=float)
        counts = [0] * (bins + 1)
        for r in recs:
            if not r.ok or not r.nmse < 1.0:
                counts[-1] += 1
            else:
                counts[min(int(r.nmse * bins), bins - 1)] += 1
        stats = MethodStats(trials=len(recs), failures=len(recs) - vals.size, counts=counts)
        if vals.size:
            stats.mean = float(np.mean(vals))
            stats.variance = float(np.var(vals))
        methods[method] = stats
    report = ExperimentReport(methods=methods, bin_edges=edges, records=records)
    if "bp" in methods and "scbp" in methods:
        report.improvement_mean = _improvement(methods["bp"].mean, methods["scbp"].mean)
        report.improvement_variance = _improvement(methods["bp"].variance, methods["scbp"].variance)
    report.m_values = tuple(sorted({(r.n, r.m) for r in records}))
    return report


# ---------------------------------------------------------------------------
# running


def trial_seed(base_seed, vector_id, block_index, trial, method=None):
    """64-bit sensing seed for one trial.

    The method takes part only for unpaired campaigns.
    """
    key = [zlib.crc32(vector_id.encode("utf-8")), int(block_index), int(trial)]
    if method is not None:
        key.append(METHODS.index(method) + 1)
    ss = np.random.SeedSequence(entropy=int(base_seed) & _SEED_MASK, spawn_key=key)
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _seed_for(cfg, vector_id, block_index, trial, method):
    if cfg.sensing_mode == "fixed":
        return int(cfg.base_seed) & _SEED_MASK
    return trial_seed(cfg.base_seed, vector_id, block_index, trial,
                      None if cfg.paired else method)


def _recover(method, phi, b, envelope, cfg):
    if method == "bp":
        return bp_recover(phi, b)
    return scbp_recover(phi, b, envelope, cfg.epsilon, alpha_weight=cfg.alpha_weight)


def _run_unit(unit, cfg, envelope, observer=None):
    vector_id, block_index, block, trial = unit
    x = block.samples
    n = x.shape[0]
    m = measurement_count(n, cfg.cr)
    out = []
    cache = {}
    for method in cfg.method_list:
        seed = _seed_for(cfg, vector_id, block_index, trial, method)
        if seed not in cache:
            phi = gen_sensing_matrix(n, m, seed)
            cache[seed] = (phi, compressive_sample(phi, x))
        phi, b = cache[seed]
        t0 = time.perf_counter()
        res = _recover(method, phi, b, envelope, cfg)
        elapsed = time.perf_counter() - t0
        rec = TrialRecord(vector_id=vector_id, block_index=block_index, n=n, m=m,
                          method=method, seed=seed, status=res.status.value,
                          trial=trial, solve_time=elapsed)
        if res.ok:
            rec.nmse = nmse(x, res.x_hat)
            rec.alpha = res.alpha
        if observer is not None:
            observer(rec, phi, b, res)
        out.append(rec)
    return out


def run_trials(vectors, cfg, envelope=None, threads=None, observer=None):
    """Run ``cfg.trials_per_vector`` trials for every block of every vector.

    Parameters
    ----------
    vectors : list of (vector_id, list of SignalBlock)
    cfg : ExperimentConfig
    envelope : StructureEnvelope, optional
        Needed when ``scbp`` is among the methods.
    threads : int, optional
        Worker threads; the records do not depend on it.
    observer : callable, optional
        Called as ``observer(record, phi, b, result)`` after every solve,
        from the worker thread, so it must be thread-safe.

    Returns
    -------
    list of TrialRecord
        Sorted by ``(vector_id, block_index, trial, method)``.
    """
    if "scbp" in cfg.method_list and envelope is None:
        raise ConfigError("scbp needs an envelope")
    silent = sum(1 for _, blocks in vectors for blk in blocks if not np.any(blk.samples))
    if silent:
        log.warning("skipping %d all-zero block(s): NMSE undefined", silent)
    units = [(vid, bi, block, t)
             for vid, blocks in vectors
             for bi, block in enumerate(blocks)
             if np.any(block.samples)
             for t in range(cfg.trials_per_vector)]
    threads = threads or os.cpu_count() or 1
    if threads == 1:
        chunks = [_run_unit(u, cfg, envelope, observer) for u in units]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda u: _run_unit(u, cfg, envelope, observer), units))
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=TrialRecord.sort_key)
    return records


def load_campaign(cfg):
    """Test vectors and envelope described by ``cfg``.

    Returns
    -------
    vectors : list of (vector_id, list of SignalBlock)
    envelope : StructureEnvelope or None
    """
    envelope = None
    train = None
    if cfg.corpus == "synthetic":
        train, test = generate_synthetic_corpus(cfg.synthetic)
        vectors = [(blk.source_id, [blk]) for blk in test]
    else:
        if cfg.corpus == "manifest":
            pairs = read_manifest(cfg.manifest)
        else:
            pairs = scan_timit(cfg.timit_dir, cfg.partition)
        found = load_phoneme_vectors(pairs, cfg.label)
        if not found:
            raise ConfigError(f"no segments labelled '{cfg.label}' in the test corpus")
        vectors = [(v.source_id, split_blocks(v)) for v in found]
        if "scbp" in cfg.method_list and cfg.envelope == "learn":
            train = load_phoneme_vectors(scan_timit(cfg.timit_dir, cfg.train_partition), cfg.label)
            if not train:
                raise ConfigError(f"no segments labelled '{cfg.label}' in the training corpus")
    if cfg.max_vectors:
        vectors = vectors[:cfg.max_vectors]
    if "scbp" in cfg.method_list:
        if cfg.envelope == "learn":
            envelope = learn_envelope(train, label=cfg.label if cfg.corpus != "synthetic" else "synthetic",
                                      created_from=cfg.corpus)
        else:
            envelope = load_envelope(cfg.envelope)
    return vectors, envelope


def run_experiment(cfg, threads=None, observer=None):
    """Load the campaign described by ``cfg``, run it and aggregate.

    Returns
    -------
    ExperimentReport
        With ``records`` holding every :class:`TrialRecord`.
    """
    cfg.validate()
    vectors, envelope = load_campaign(cfg)
    log.info("running %d vector(s), %d block(s), %d trial(s) each",
             len(vectors), sum(len(b) for _, b in vectors), cfg.trials_per_vector)
    records = run_trials(vectors, cfg, envelope, threads=threads, observer=observer)
    report = aggregate(records, bins=cfg.histogram_bins)
    report.config = cfg
    return report


# ---------------------------------------------------------------------------
# files

TRIAL_COLUMNS = ("vector_id", "block_index", "n", "m", "method", "seed", "status", "nmse", "alpha")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _fmt_stat(v, pct=False):
    if v is None:
        return "n/a"
    return f"{v:.1f}%" if pct else f"{v:.6g}"


def _summary_text(report):
    methods = report.methods
    cols = [m for m in METHODS if m in methods]
    head = f"{'':<16}" + "".join(f"{m.upper():>14}" for m in cols)
    both = len(cols) == 2
    if both:
        head += f"{'% Improvement':>16}"
    lines = [head]
    for label, attr, imp in (("NMSE Mean", "mean", report.improvement_mean),
                             ("NMSE Variance", "variance", report.improvement_variance)):
        row = f"{label:<16}" + "".join(f"{_fmt_stat(getattr(methods[m], attr)):>14}" for m in cols)
        if both:
            row += f"{_fmt_stat(imp, pct=True):>16}"
        lines.append(row)
    lines.append(f"{'Trials':<16}" + "".join(f"{methods[m].trials:>14}" for m in cols))
    lines.append(f"{'Failures':<16}" + "".join(f"{methods[m].failures:>14}" for m in cols))
    lines.append("")
    lines.append("variance: population (divide by N) over optimal trials; failures excluded")
    lines.append("histogram: failed trials counted in the overflow bin")
    if report.m_values:
        lines.append("block lengths / measurements: "
                     + ", ".join(f"n={n} m={m}" for n, m in report.m_values))
    return "\n".join(lines) + "\n"


def write_report(report, records, out_dir, include_trials=True):
    """Write ``summary.txt`` and ``histogram.csv``, plus ``trials.csv`` and
    ``timings.csv`` unless ``include_trials`` is false."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        records = sorted(records, key=TrialRecord.sort_key)
        if include_trials:
            with open(out / "trials.csv", "w", newline="", encoding="utf-8") as f:
                w = csv.writer(f, lineterminator="\n")
                w.writerow(TRIAL_COLUMNS + ("trial",))
                for r in records:
                    w.writerow([_fmt(getattr(r, c)) for c in TRIAL_COLUMNS] + [r.trial])
            with open(out / "timings.csv", "w", newline="", encoding="utf-8") as f:
                w = csv.writer(f, lineterminator="\n")
                w.writerow(("vector_id", "block_index", "trial", "method", "solve_time"))
                for r in records:
                    w.writerow([r.vector_id, r.block_index, r.trial, r.method, f"{r.solve_time:.6f}"])
        with open(out / "summary.txt", "w", encoding="utf-8") as f:
            if report.methods:
                f.write(_summary_text(report))
            else:
                f.write("no trials\n")
        with open(out / "histogram.csv", "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(("bin_low", "bin_high", "count_bp", "count_scbp"))
            edges = report.bin_edges
            nb = len(edges) - 1
            for i in range(nb + 1):
                lo = edges[i] if i < nb else edges[-1]
                hi = edges[i + 1] if i < nb else math.inf
                counts = [report.methods[m].counts[i] if m in report.methods else 0
                          for m in METHODS]
                w.writerow([_fmt(float(lo)), _fmt(float(hi))] + counts)
    except OSError as e:
        raise OSError(f"writing report to {out}: {e}") from e


def read_trials(path):
    """Parse a ``trials.csv`` written by :func:`write_report`."""
    path = os.fspath(path)
    records = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header[:len(TRIAL_COLUMNS)]) != TRIAL_COLUMNS:
            raise ParseError(f"unexpected header {header}", path, 1)
        for lineno, row in enumerate(reader, 2):
            try:
                rec = dict(zip(header, row))
                records.append(TrialRecord(
                    vector_id=rec["vector_id"], block_index=int(rec["block_index"]),
                    n=int(rec["n"]), m=int(rec["m"]), method=rec["method"],
                    seed=int(rec["seed"]), status=rec["status"],
                    nmse=float(rec["nmse"]) if rec["nmse"] else None,
                    alpha=float(rec["alpha"]) if rec["alpha"] else None,
                    trial=int(rec.get("trial", 0) or 0)))
            except (KeyError, ValueError) as e:
                raise ParseError(f"bad trial row: {e}", path, lineno) from None
            if records[-1].method not in METHODS:
                raise ParseError(f"unknown method {records[-1].method!r}", path, lineno)
    return records

