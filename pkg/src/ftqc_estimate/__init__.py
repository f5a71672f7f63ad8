"""Physical-qubit and runtime estimates for surface-code fault-tolerant
algorithms across hardware profiles."""

from .core_model import (ErrorBudget, FailureAccount, HardwareProfile, calibrate_code_distance,
                         default_reaction_time, device_area, failure_account,
                         logical_error_rate, physical_qubits_per_tile,
                         worst_case_physical_error)
from .errors import (AboveThresholdError, BudgetTooSmall, CalibrationInfeasible,
                     EstimationError, FactoryCountOutOfRange, FixedPointDivergence,
                     InfeasibleError, InputError, TargetUnreachable, UnitCountOutOfRange)
from .factories import (AutoCCZDesign, FactoryModel, TFactoryDesign, autoccz_output_error,
                        calibrate_autoccz, calibrate_t_factory, load_factory_model,
                        per_state_budget, routing_factor, t_factory_error)
from .logical_spec import (GateCurrency, LogicalRequirements, required_ccz_states, t_per_layer,
                           toffoli_to_t_count)
from .strategies import (PhysicalEstimate, Regime, Strategy, estimate, estimate_autoccz,
                         estimate_beat_limited, estimate_gosc_units, gosc_time_optimal_units,
                         min_qubits_for_runtime, runtime_for_qubit_budget,
                         time_optimal_runtime)
from .sweeps import (Phase, PowerLawFit, SweepSeries, Termination, equilibrium_fit,
                     equilibrium_t_layer, log_grid, optimal_t_layer, sweep_code_cycle,
                     sweep_physical_error)
from .io import Scenario, load_scenario, PRESETS

__version__ = "0.1.0"
