"""Compressive sampling and structure-constrained basis pursuit recovery."""

__version__ = "0.1.0"

from .corpus import (
    SignalBlock,
    PhonemeSegment,
    SyntheticCorpusConfig,
    read_audio,
    write_wav,
    parse_transcript,
    extract_phoneme,
    split_blocks,
    generate_synthetic_corpus,
)
from .errors import (
    ConfigError,
    FormatError,
    InvalidDimensionError,
    InvalidInputError,
    ParseError,
    ScbpError,
    UndefinedMetricError,
    UnsupportedSizeError,
)
from .experiment import ExperimentConfig, aggregate, nmse, run_experiment, write_report
from .lp import LinearProgram, LpSolution, LpStatus, oracle_solve_small, solve_lp
from .recovery import RecoveryResult, bp_recover, build_bp_lp, build_scbp_lp, scbp_recover
from .sensing import SensingMatrix, compressive_sample, gen_sensing_matrix, measurement_count
from .structure import (
    StructureEnvelope,
    envelope_for_length,
    learn_envelope,
    load_envelope,
    normalized_profile,
    resample_to,
    save_envelope,
)
from .transform import dct_forward, dct_inverse
