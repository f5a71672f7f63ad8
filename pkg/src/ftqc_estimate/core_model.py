"""Hardware timing, the surface-code error model and distance calibration.

Durations are seconds, areas are m^2, probabilities are plain floats.
Code distances are plain ``int`` values; :func:`check_distance` enforces
the odd, >= 3 convention where a protecting code is required.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal

from .errors import AboveThresholdError, CalibrationInfeasible, InputError

THRESHOLD = 0.01
CLASSICAL_LATENCY = 10e-6
DEFAULT_D_MAX = 99


def default_reaction_time(cc: float) -> float:
    """Reaction time assumed for a code cycle ``cc``: a quarter cycle of
    measurement plus a fixed 10 us of decoding and feed-forward."""
    if cc < 0:
        raise InputError(f"code cycle time must be >= 0, got {cc!r}")
    return cc / 4 + CLASSICAL_LATENCY


@dataclass(frozen=True)
class HardwareProfile:
    code_cycle_time: float
    physical_error_rate: float
    reaction_time: float | None = None
    qubit_area: float | None = None
    max_physical_qubits: int | None = None

    def __post_init__(self):
        if not self.code_cycle_time > 0:
            raise InputError(f"code_cycle_time must be > 0, got {self.code_cycle_time!r}")
        if self.reaction_time is not None and not self.reaction_time > 0:
            raise InputError(f"reaction_time must be > 0, got {self.reaction_time!r}")
        check_error_rate(self.physical_error_rate)
        if self.qubit_area is not None and not self.qubit_area > 0:
            raise InputError("qubit_area must be > 0")
        if self.max_physical_qubits is not None and self.max_physical_qubits < 1:
            raise InputError("max_physical_qubits must be >= 1")

    @property
    def rt(self) -> float:
        """Effective reaction time in seconds."""
        if self.reaction_time is not None:
            return self.reaction_time
        return default_reaction_time(self.code_cycle_time)

    @property
    def cc(self) -> float:
        return self.code_cycle_time

    @property
    def p(self) -> float:
        return self.physical_error_rate


@dataclass(frozen=True)
class ErrorBudget:
    topological_budget: float = 0.01
    distillation_budget: float = 0.05

    def __post_init__(self):
        for name in ("topological_budget", "distillation_budget"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise InputError(f"{name} must lie in (0, 1), got {v!r}")
        if self.topological_budget + self.distillation_budget >= 1:
            raise InputError("error budgets must sum to less than 1")


@dataclass(frozen=True)
class FailureAccount:
    topological_error: float
    distillation_error: float
    total: float


def check_error_rate(p: float) -> float:
    if not 0 < p < THRESHOLD:
        if p >= THRESHOLD:
            raise AboveThresholdError(
                f"physical error rate {p!r} is at or above the {THRESHOLD} threshold")
        raise InputError(f"physical error rate must be positive, got {p!r}")
    return p


def check_distance(d: int) -> int:
    if d != int(d) or d < 3 or d % 2 == 0:
        raise InputError(f"code distance must be an odd integer >= 3, got {d!r}")
    return int(d)


def logical_error_rate(p: float, d: int) -> float:
    """Per-logical-qubit, per-code-cycle error ``0.1 (100 p)^((d+1)/2)``."""
    check_error_rate(p)
    if d < 1:
        raise InputError(f"distance must be >= 1, got {d!r}")
    return 0.1 * (100 * p) ** ((d + 1) / 2)


def physical_qubits_per_tile(d: int) -> int:
    if d < 1:
        raise InputError(f"distance must be >= 1, got {d!r}")
    return 2 * d * d


def worst_case_physical_error(fidelity: float, hilbert_dim: int) -> float:
    """Worst-case (fully coherent) error rate for a gate of the given
    fidelity acting on a ``hilbert_dim``-dimensional space.

    The infidelity is taken in decimal arithmetic: fidelities are quoted as
    decimals close to 1 and ``1 - F`` in binary floating point loses most of
    its significant digits.
    """
    if not 0 <= fidelity <= 1:
        raise InputError(f"fidelity must lie in [0, 1], got {fidelity!r}")
    if hilbert_dim < 2 or hilbert_dim & (hilbert_dim - 1):
        raise InputError(f"hilbert_dim must be a power of two >= 2, got {hilbert_dim!r}")
    infidelity = Decimal(1) - Decimal(repr(float(fidelity)))
    return float((hilbert_dim * (hilbert_dim + 1) * infidelity).sqrt())


def topological_error(n_tiles: float, total_cycles: float, p: float, d: int) -> float:
    return n_tiles * total_cycles * logical_error_rate(p, d)


def calibrate_code_distance(n_tiles: float, total_cycles: float, p: float,
                            budget: float, d_max: int = DEFAULT_D_MAX) -> int:
    """Smallest odd ``d >= 3`` keeping ``n_tiles * total_cycles * p_L`` within
    ``budget``."""
    if n_tiles <= 0 or total_cycles <= 0 or budget <= 0:
        raise InputError("n_tiles, total_cycles and budget must be positive")
    check_error_rate(p)
    exposure = n_tiles * total_cycles
    for d in range(3, d_max + 1, 2):
        if exposure * logical_error_rate(p, d) <= budget:
            return d
    raise CalibrationInfeasible(
        f"no distance <= {d_max} keeps {n_tiles:.4g} tiles x {total_cycles:.4g} cycles "
        f"within {budget:g} at p={p:g}")


def device_area(qubits: float, area_per_qubit: float) -> float:
    """Side length in metres of a square device holding ``qubits``."""
    if qubits < 0 or not area_per_qubit > 0:
        raise InputError("qubits must be >= 0 and area_per_qubit > 0")
    return math.sqrt(qubits * area_per_qubit)


def failure_account(topological: float, distillation: float) -> FailureAccount:
    for v in (topological, distillation):
        if not 0 <= v <= 1:
            raise InputError(f"probabilities must lie in [0, 1], got {v!r}")
    return FailureAccount(topological, distillation, min(1.0, topological + distillation))
