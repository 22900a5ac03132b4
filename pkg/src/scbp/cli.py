"""Command-line entry point: ``scbp {learn,recover,experiment,report}``.

Usage and configuration errors exit with status 2, any other failure
with 1.  The resolved configuration is echoed to stdout as
``# key = value`` lines before work starts; diagnostics go to stderr.
"""

import argparse
import logging
import os
from pathlib import Path
import sys

import numpy as np

from . import __version__
from .corpus import (
    SyntheticCorpusConfig,
    generate_synthetic_corpus,
    load_phoneme_vectors,
    read_audio,
    read_manifest,
    scan_timit,
    split_blocks,
    write_wav,
)
from .errors import ConfigError, ParseError, ScbpError
from .experiment import (
    ExperimentConfig,
    aggregate,
    nmse,
    read_trials,
    run_experiment,
    trial_seed,
    write_report,
)
from .recovery import bp_recover, scbp_recover
from .sensing import compressive_sample, gen_sensing_matrix, measurement_count
from .structure import learn_envelope, load_envelope, save_envelope

log = logging.getLogger("scbp")


class UsageError(Exception):
    pass


def _echo(settings):
    for key, value in settings.items():
        print(f"# {key} = {value}")
    sys.stdout.flush()


def _add_synthetic_flags(p):
    d = SyntheticCorpusConfig()
    g = p.add_argument_group("synthetic corpus")
    g.add_argument("--synthetic-seed", type=int, default=d.seed)
    g.add_argument("--n-train", type=int, default=d.n_train)
    g.add_argument("--n-test", type=int, default=d.n_test)
    g.add_argument("--block-length", type=int, default=d.block_length)
    g.add_argument("--sparsity", type=int, default=d.sparsity)
    g.add_argument("--band-fraction", type=float, default=d.band_fraction)
    g.add_argument("--noise-floor", type=float, default=d.noise_floor)


def _synthetic_from(args):
    return SyntheticCorpusConfig(
        n_train=args.n_train, n_test=args.n_test, block_length=args.block_length,
        sparsity=args.sparsity, band_fraction=args.band_fraction,
        noise_floor=args.noise_floor, seed=args.synthetic_seed).validate()


def cmd_learn(args):
    if args.manifest and args.timit_dir:
        raise UsageError("give at most one of --manifest and --timit-dir")
    if args.manifest or args.timit_dir:
        source = f"manifest:{args.manifest}" if args.manifest else f"timit:{args.timit_dir}/{args.partition}"
        _echo({"source": source, "label": args.label, "out": args.out})
        pairs = read_manifest(args.manifest) if args.manifest else scan_timit(args.timit_dir, args.partition)
        blocks = load_phoneme_vectors(pairs, args.label)
        if not blocks:
            raise ConfigError(f"no segments labelled '{args.label}' in {source}")
    else:
        cfg = _synthetic_from(args)
        source = "synthetic"
        settings = {"source": source, "label": args.label, "out": args.out}
        settings.update({k: getattr(cfg, k) for k in cfg.__dataclass_fields__})
        _echo(settings)
        blocks, _ = generate_synthetic_corpus(cfg)
    env = learn_envelope(blocks, label=args.label, created_from=source)
    save_envelope(env, args.out)
    width = env.width
    print(f"training_count {env.training_count}")
    print(f"width mean {width.mean():.6g} min {width.min():.6g} max {width.max():.6g}")
    print(f"wrote {args.out}")
    return 0


def cmd_recover(args):
    if args.method == "scbp" and not args.envelope:
        raise UsageError("--method scbp requires --envelope")
    vector_id = args.vector_id or Path(args.input).stem
    _echo({"input": args.input, "truth": args.truth, "envelope": args.envelope,
           "method": args.method, "cr": args.cr, "epsilon": args.epsilon, "seed": args.seed,
           "trial": args.trial, "vector_id": vector_id, "block_length": args.block_length,
           "out": args.out})
    env = load_envelope(args.envelope) if args.method == "scbp" else None
    audio = read_audio(args.input, sample_rate=args.sample_rate)
    truth = read_audio(args.truth, sample_rate=args.sample_rate) if args.truth else audio
    if truth.n != audio.n:
        raise ConfigError(f"--truth has {truth.n} samples, input has {audio.n}")
    blocks = split_blocks(audio, args.block_length)
    truth_blocks = split_blocks(truth, args.block_length)
    recovered = []
    failed = 0
    print("block n m status nmse")
    for i, (blk, ref) in enumerate(zip(blocks, truth_blocks)):
        n = blk.n
        m = measurement_count(n, args.cr)
        phi = gen_sensing_matrix(n, m, trial_seed(args.seed, vector_id, i, args.trial))
        b = compressive_sample(phi, blk)
        if args.method == "bp":
            res = bp_recover(phi, b)
        else:
            res = scbp_recover(phi, b, env, args.epsilon)
        if res.ok:
            x_hat = res.x_hat
            err = nmse(ref, x_hat) if np.any(ref.samples) else float("nan")
            print(f"{i} {n} {m} {res.status} {err!r}")
        else:
            failed += 1
            x_hat = np.zeros(n)
            print(f"{i} {n} {m} {res.status} nan")
        recovered.append(x_hat)
    if args.out:
        write_wav(args.out, np.concatenate(recovered), audio.sample_rate)
        print(f"wrote {args.out}")
    return 1 if failed else 0


def cmd_experiment(args):
    cfg = ExperimentConfig.from_file(args.config)
    cfg.validate()
    threads = args.threads or os.cpu_count() or 1
    _echo({**{k: getattr(cfg, k) for k in cfg.keys() if getattr(cfg, k) is not None},
           "threads": threads, "out": args.out})
    report = run_experiment(cfg, threads=threads)
    write_report(report, report.records, args.out)
    sys.stdout.write((Path(args.out) / "summary.txt").read_text(encoding="utf-8"))
    return 0


def cmd_report(args):
    _echo({"trials": args.trials, "bins": args.bins, "out": args.out})
    records = read_trials(args.trials)
    report = aggregate(records, bins=args.bins)
    out = args.out or str(Path(args.trials).parent)
    write_report(report, records, out, include_trials=False)
    sys.stdout.write((Path(out) / "summary.txt").read_text(encoding="utf-8"))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scbp",
        description="Compressive sampling with basis pursuit and structure-constrained basis pursuit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="learn a structure envelope and save it")
    p.add_argument("--out", required=True, help="envelope file to write")
    p.add_argument("--label", default="aa", help="phoneme label to collect (default: aa)")
    p.add_argument("--manifest", help="file of '<audio.wav> <transcript.phn>' lines")
    p.add_argument("--timit-dir", help="TIMIT root with converted RIFF WAVs next to .PHN files")
    p.add_argument("--partition", default="TRAIN", help="TIMIT partition (default: TRAIN)")
    _add_synthetic_flags(p)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("recover", help="sample and recover one WAV file")
    p.add_argument("--input", required=True, help="16-bit mono WAV to sample")
    p.add_argument("--truth", help="reference WAV for NMSE (default: the input)")
    p.add_argument("--envelope", help="envelope file (required for scbp)")
    p.add_argument("--method", choices=("bp", "scbp"), default="bp")
    p.add_argument("--cr", type=float, default=5, help="compression ratio n/m (default: 5)")
    p.add_argument("--epsilon", type=float, default=0.001)
    p.add_argument("--seed", type=int, default=0, help="base seed for sensing matrices")
    p.add_argument("--trial", type=int, default=0, help="trial index used in seed derivation")
    p.add_argument("--vector-id", help="id used in seed derivation (default: input file stem)")
    p.add_argument("--block-length", type=int, default=1024)
    p.add_argument("--sample-rate", type=int, help="rate for headerless .raw/.pcm input")
    p.add_argument("--out", help="recovered WAV to write")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("experiment", help="run a BP/SCBP campaign from a config file")
    p.add_argument("--config", required=True, help="'key = value' campaign config")
    p.add_argument("--out", required=True, help="directory for report files")
    p.add_argument("--threads", type=int, help="worker threads (default: all cores)")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("report", help="re-aggregate an existing trials.csv into summary and histogram")
    p.add_argument("--trials", required=True)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--out", help="directory for summary/histogram (default: next to trials.csv)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except (ConfigError, ParseError) as e:
        print(f"scbp: error: {e}", file=sys.stderr)
        return 2
    except (ScbpError, OSError, ValueError) as e:
        print(f"scbp: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
