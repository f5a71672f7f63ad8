"""
Comparing layouts for a chemistry workload
==========================================

Estimate the FeMoco ground-state computation (2196 logical qubits, 6.7e9
Toffoli gates) with each surface-code layout, on a fast superconducting-style
profile and a slow trapped-ion-style profile.
"""

from fractions import Fraction

from ftqc_estimate import (HardwareProfile, Strategy, estimate, gosc_time_optimal_units,
                           load_scenario, min_qubits_for_runtime, runtime_for_qubit_budget)

DAY = 86400

spec = load_scenario("femoco").logical
fast = HardwareProfile(code_cycle_time=1e-6, physical_error_rate=1e-3)
slow = HardwareProfile(code_cycle_time=235e-6, physical_error_rate=1e-3)

# one AutoCCZ factory feeding a plain data block
for name, profile in [("1 us", fast), ("235 us", slow)]:
    e = estimate(spec, profile, Strategy.AUTOCCZ)
    print(f"AutoCCZ x1 @ {name:>6}: {e.total_physical_qubits / 1e6:6.2f}M qubits, "
          f"{e.runtime / DAY:8.1f} days, d={e.data_distance}")

# the beat-limited layout consumes one T state per beat from a faster data block
beat = estimate(spec, fast, Strategy.BEAT_LIMITED)
print(f"beat-limited @   1 us: {beat.total_physical_qubits / 1e6:6.2f}M qubits, "
      f"{beat.runtime / DAY:8.1f} days, {beat.factory_count} T factories")

# parallel schemes need a measurement depth; assume 100 Toffoli gates per layer
layered = spec.with_depth_fraction(Fraction(1, 100))
print(f"time-optimal GoSC units @ 235 us: {gosc_time_optimal_units(layered, slow)}")

# how many qubits to finish in ten days on the slow profile, and the converse
ten_days = min_qubits_for_runtime(layered, slow, 10 * DAY)
print(f"10-day target @ 235 us: {ten_days.total_physical_qubits / 1e6:.1f}M qubits "
      f"({ten_days.factory_count} factories)")
best = runtime_for_qubit_budget(layered, slow, 45e6)
print(f"45M-qubit budget @ 235 us: {best.runtime / DAY:.1f} days "
      f"({best.factory_count} factories)")
