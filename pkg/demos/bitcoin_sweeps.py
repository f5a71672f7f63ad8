"""
How hardware speed and noise move the cost of a 256-bit key break
=================================================================

Sweep code cycle time and physical error rate for the elliptic-curve
discrete-log circuit, writing each series to CSV next to this script.
"""

from pathlib import Path

from ftqc_estimate import (HardwareProfile, load_scenario, log_grid, min_qubits_for_runtime,
                           sweep_code_cycle, sweep_physical_error)
from ftqc_estimate.io import write_sweep_csv

out = Path(__file__).with_suffix("")
out.mkdir(exist_ok=True)

spec = load_scenario("bitcoin-ec256").logical
base = HardwareProfile(code_cycle_time=1e-6, physical_error_rate=1e-3)

# headline numbers at 1 us
for label, seconds in [("1 day", 86400), ("1 hour", 3600), ("10 minutes", 600)]:
    e = min_qubits_for_runtime(spec, base, seconds)
    print(f"{label:>10}: {e.total_physical_qubits / 1e6:7.1f}M qubits, "
          f"{e.factory_count} AutoCCZ factories")

# qubits against code cycle time; each series ends where depth * RT exceeds the target
for label, seconds in [("1day", 86400), ("1hour", 3600), ("10min", 600)]:
    series = sweep_code_cycle(spec, base, log_grid(1e-8, 1e-3, 20), seconds)
    with open(out / f"cc_{label}.csv", "w", newline="") as fh:
        write_sweep_csv(series, fh)
    print(f"cc sweep {label}: {len(series.samples)} points, stopped: "
          f"{series.termination.value} at {series.stopped_at}")

# qubits against physical error rate; ends where distillation cannot keep up
series = sweep_physical_error(spec, base, log_grid(1e-5, 9.9e-3, 20), 3600)
with open(out / "p_1hour.csv", "w", newline="") as fh:
    write_sweep_csv(series, fh)
print(f"error sweep: last feasible p = {series.xs[-1]:.2e}, first infeasible "
      f"p = {series.stopped_at:.2e}")
