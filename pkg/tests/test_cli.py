import subprocess
import sys

import numpy as np
import pytest

from scbp.cli import main
from scbp.corpus import SignalBlock, SyntheticCorpusConfig, generate_synthetic_corpus, read_audio, write_wav
from scbp.experiment import ExperimentConfig, run_trials
from scbp.structure import load_envelope


@pytest.fixture(scope="module")
def envelope_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("env") / "synth.env"
    assert main(["learn", "--synthetic-seed", "7", "--n-train", "40", "--label", "synth",
                 "--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def fixture_wav(tmp_path_factory):
    test = generate_synthetic_corpus(SyntheticCorpusConfig(n_train=0, n_test=1, seed=7))[1]
    path = tmp_path_factory.mktemp("wav") / "vowel.wav"
    write_wav(path, test[0].samples)
    return path


def recover_lines(out):
    return [line for line in out.splitlines() if line and line[0].isdigit()]


def test_learn_writes_envelope(envelope_file, capsys):
    env = load_envelope(envelope_file)
    assert env.training_count == 40 and env.label == "synth"


def test_learn_echoes_config(tmp_path, capsys):
    assert main(["learn", "--n-train", "5", "--out", str(tmp_path / "e.env")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# source = synthetic")
    assert "# n_train = 5" in out and "training_count 5" in out


def test_learn_requires_out(capsys):
    with pytest.raises(SystemExit) as e:
        main(["learn"])
    assert e.value.code == 2


def test_learn_reports_missing_label(tmp_path, capsys):
    write_wav(tmp_path / "a.wav", np.zeros(100))
    (tmp_path / "a.PHN").write_text("0 100 iy\n")
    (tmp_path / "m.txt").write_text("a.wav a.PHN\n")
    code = main(["learn", "--manifest", str(tmp_path / "m.txt"), "--label", "aa",
                 "--out", str(tmp_path / "e.env")])
    assert code == 2
    assert "'aa'" in capsys.readouterr().err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as e:
        main(["recover", "--input", "x.wav", "--bogus"])
    assert e.value.code == 2


def test_recover_scbp_needs_envelope(fixture_wav, capsys):
    with pytest.raises(SystemExit) as e:
        main(["recover", "--input", str(fixture_wav), "--method", "scbp"])
    assert e.value.code == 2
    assert "--envelope" in capsys.readouterr().err


def test_recover_missing_file_is_runtime_error(tmp_path, capsys):
    assert main(["recover", "--input", str(tmp_path / "none.wav")]) == 1


def test_recover_cr1_reproduces_input(fixture_wav, tmp_path, capsys):
    out = tmp_path / "rec.wav"
    assert main(["recover", "--input", str(fixture_wav), "--cr", "1", "--out", str(out)]) == 0
    a = read_audio(fixture_wav).samples
    b = read_audio(out).samples
    assert np.max(np.abs(a - b)) <= 1 / 32768


def test_recover_matches_experiment_trial(fixture_wav, envelope_file, capsys):
    for method in ("bp", "scbp"):
        args = ["recover", "--input", str(fixture_wav), "--method", method, "--seed", "3",
                "--trial", "2"]
        if method == "scbp":
            args += ["--envelope", str(envelope_file)]
        assert main(args) == 0
        line = recover_lines(capsys.readouterr().out)[0].split()
        assert line[:4] == ["0", "256", "51", "optimal"]

        block = read_audio(fixture_wav)
        cfg = ExperimentConfig(base_seed=3, trials_per_vector=3, methods=method)
        recs = run_trials([("vowel", [SignalBlock(block.samples)])], cfg,
                          load_envelope(envelope_file), threads=1)
        assert float(line[4]) == recs[2].nmse


def test_recover_with_truth(fixture_wav, tmp_path, capsys):
    assert main(["recover", "--input", str(fixture_wav), "--truth", str(fixture_wav)]) == 0
    write_wav(tmp_path / "short.wav", np.zeros(10))
    assert main(["recover", "--input", str(fixture_wav), "--truth", str(tmp_path / "short.wav")]) == 2


def small_config(tmp_path, extra=""):
    path = tmp_path / "c.cfg"
    path.write_text("envelope = learn\ntrials_per_vector = 2\nn_train = 20\nn_test = 3\n"
                    "block_length = 32\nsparsity = 3\n" + extra)
    return path


def test_experiment_writes_reports(tmp_path, capsys):
    cfg = small_config(tmp_path)
    assert main(["experiment", "--config", str(cfg), "--out", str(tmp_path / "r1"), "--threads", "1"]) == 0
    out = capsys.readouterr().out
    assert "# trials_per_vector = 2" in out and "NMSE Mean" in out
    for name in ("trials.csv", "summary.txt", "histogram.csv", "timings.csv"):
        assert (tmp_path / "r1" / name).is_file()
    assert main(["experiment", "--config", str(cfg), "--out", str(tmp_path / "r2"), "--threads", "2"]) == 0
    assert (tmp_path / "r1" / "trials.csv").read_bytes() == (tmp_path / "r2" / "trials.csv").read_bytes()


def test_experiment_invalid_key(tmp_path, capsys):
    cfg = small_config(tmp_path, "wobble = 3\n")
    assert main(["experiment", "--config", str(cfg), "--out", str(tmp_path / "r")]) == 2
    assert "wobble" in capsys.readouterr().err


def test_experiment_missing_config(tmp_path, capsys):
    assert main(["experiment", "--config", str(tmp_path / "none.cfg"), "--out", str(tmp_path)]) == 2


def test_threads_must_be_positive(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["experiment", "--config", "x", "--out", "y", "--threads", "0"])
    assert e.value.code == 2


def test_report_reaggregates(tmp_path, capsys):
    cfg = small_config(tmp_path)
    run_dir = tmp_path / "run"
    assert main(["experiment", "--config", str(cfg), "--out", str(run_dir), "--threads", "1"]) == 0
    summary = (run_dir / "summary.txt").read_text()
    timings = (run_dir / "timings.csv").read_bytes()
    capsys.readouterr()
    assert main(["report", "--trials", str(run_dir / "trials.csv")]) == 0
    assert (run_dir / "summary.txt").read_text() == summary
    assert (run_dir / "timings.csv").read_bytes() == timings
    assert main(["report", "--trials", str(run_dir / "trials.csv"), "--bins", "4",
                 "--out", str(tmp_path / "coarse")]) == 0
    assert len((tmp_path / "coarse" / "histogram.csv").read_text().splitlines()) == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "scbp", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for sub in ("learn", "recover", "experiment", "report"):
        assert sub in proc.stdout
