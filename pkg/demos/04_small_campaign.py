"""A miniature BP vs SCBP campaign with report files."""

from pathlib import Path
import tempfile

from scbp import ExperimentConfig, run_experiment, write_report

# Same recipe as configs/synthetic-default.cfg, scaled down to run in seconds.
cfg = ExperimentConfig(envelope="learn", n_train=100, n_test=8, trials_per_vector=3)
report = run_experiment(cfg, threads=1)

for method, st in report.methods.items():
    print(f"{method:>4}: mean NMSE {st.mean:.4f}  variance {st.variance:.5f}  "
          f"failures {st.failures}/{st.trials}")
print(f"improvement of the mean: {report.improvement_mean:.1f}%")

with tempfile.TemporaryDirectory() as d:
    write_report(report, report.records, d)
    print(Path(d, "summary.txt").read_text())
    print("\n".join(Path(d, "histogram.csv").read_text().splitlines()[:4]))
