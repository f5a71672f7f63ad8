"""Parameter sweeps, the optimal-T-per-layer search and the power-law fit."""

from __future__ import annotations

import enum
import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .core_model import ErrorBudget, HardwareProfile
from .errors import (AboveThresholdError, CalibrationInfeasible, InfeasibleError, InputError,
                     TargetUnreachable)
from .factories import DEFAULT_MODEL, FactoryModel
from .logical_spec import LogicalRequirements
from .strategies import (DEFAULT_BUDGET, PhysicalEstimate, Strategy, estimate_beat_limited,
                         min_qubits_for_runtime)


class Termination(enum.Enum):
    GRID_EXHAUSTED = "grid_exhausted"
    TIME_OPTIMAL_LIMIT = "time_optimal_limit"
    CALIBRATION_INFEASIBLE = "calibration_infeasible"


@dataclass(frozen=True)
class SweepSeries:
    axis_name: str
    samples: list[tuple[float, PhysicalEstimate]]
    termination: Termination
    stopped_at: float | None = None

    @property
    def xs(self) -> list[float]:
        return [x for x, _ in self.samples]

    @property
    def qubits(self) -> list[int]:
        return [e.total_physical_qubits for _, e in self.samples]


def log_grid(start: float, stop: float, per_decade: int = 60) -> np.ndarray:
    """Log-spaced grid with ``per_decade`` points per factor of ten."""
    if not 0 < start < stop:
        raise InputError("log grid needs 0 < start < stop")
    n = max(2, int(round(math.log10(stop / start) * per_decade)) + 1)
    return np.geomspace(start, stop, n)


def _point(spec, target, strategy, budget, model, profile):
    """Evaluate one grid point; infeasibility comes back as a value so that
    pooled workers can report it."""
    try:
        return min_qubits_for_runtime(spec, profile, target, strategy, budget, model)
    except InfeasibleError as exc:
        return exc


def _run(profiles, spec, target, strategy, budget, model, workers):
    fn = functools.partial(_point, spec, target, strategy, budget, model)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, profiles))
    return [fn(pr) for pr in profiles]


def _collect(axis, xs, results) -> SweepSeries:
    samples = []
    for x, res in zip(xs, results):
        if isinstance(res, Exception):
            kind = (Termination.CALIBRATION_INFEASIBLE
                    if isinstance(res, CalibrationInfeasible)
                    else Termination.TIME_OPTIMAL_LIMIT)
            return SweepSeries(axis, samples, kind, float(x))
        samples.append((float(x), res))
    return SweepSeries(axis, samples, Termination.GRID_EXHAUSTED)


def _ascending(grid) -> list[float]:
    xs = [float(x) for x in grid]
    if not xs:
        raise InputError("sweep grid is empty")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise InputError("sweep grid must be strictly ascending")
    return xs


def sweep_code_cycle(spec: LogicalRequirements, profile_template: HardwareProfile,
                     cc_grid: Sequence[float], target: float,
                     strategy: Strategy = Strategy.AUTOCCZ,
                     budget: ErrorBudget = DEFAULT_BUDGET,
                     model: FactoryModel = DEFAULT_MODEL,
                     workers: int | None = None) -> SweepSeries:
    """Minimum qubits to finish within ``target`` at each code cycle time.

    The reaction time follows the template: derived from each cycle time
    unless the template pins it. The series stops at the first cycle time
    whose time-optimal runtime exceeds the target.
    """
    xs = _ascending(cc_grid)
    profiles = [replace(profile_template, code_cycle_time=x) for x in xs]
    return _collect("code_cycle_time_s", xs,
                    _run(profiles, spec, target, strategy, budget, model, workers))


def sweep_physical_error(spec: LogicalRequirements, profile_template: HardwareProfile,
                         p_grid: Sequence[float], target: float,
                         strategy: Strategy = Strategy.AUTOCCZ,
                         budget: ErrorBudget = DEFAULT_BUDGET,
                         model: FactoryModel = DEFAULT_MODEL,
                         workers: int | None = None) -> SweepSeries:
    """Minimum qubits to finish within ``target`` at each physical error
    rate; stops where factory calibration becomes infeasible."""
    xs = _ascending(p_grid)
    if xs[0] <= 0 or xs[-1] >= 0.01:
        raise AboveThresholdError("error-rate grid must lie inside (0, 0.01)")
    profiles = [replace(profile_template, physical_error_rate=x) for x in xs]
    return _collect("physical_error_prob", xs,
                    _run(profiles, spec, target, strategy, budget, model, workers))


# ---------------------------------------------------------------------------
# optimal T per layer


class Phase(enum.Enum):
    NO_PARALLELIZATION = "no_parallelization"
    OSCILLATING = "oscillating"
    EQUILIBRIUM = "equilibrium"
    SATURATED = "saturated"


@dataclass(frozen=True)
class PhaseThresholds:
    # fewer units than this at the optimum: unit-count granularity dominates
    equilibrium_min_units: int = 20
    # optimum within this factor of the smallest feasible T_layer: reaction limit binds
    saturation_margin: float = 1.05


@dataclass(frozen=True)
class LayerScanPoint:
    t_layer: float
    estimate: PhysicalEstimate | None


@dataclass(frozen=True)
class OptimalLayer:
    t_layer: float
    estimate: PhysicalEstimate
    phase: Phase
    scan: list[LayerScanPoint] = field(default_factory=list, repr=False)

    @property
    def depth_ratio(self) -> float:
        """Measurement depth over T count, ``1 / t_layer`` (0 when no
        parallelization is needed)."""
        return 1 / self.t_layer if self.t_layer else 0.0


def t_layer_grid(max_t_layer: float, per_decade: int = 60) -> list[float]:
    """Distinct log-spaced T-per-layer values in ``[1, max_t_layer]``."""
    if max_t_layer < 1:
        raise InputError("max_t_layer must be >= 1")
    if max_t_layer == 1:
        return [1.0]
    return [float(x) for x in log_grid(1.0, float(max_t_layer), per_decade)]


def optimal_t_layer(n: int, t_count: int, profile: HardwareProfile, target: float,
                    budget: ErrorBudget = DEFAULT_BUDGET,
                    model: FactoryModel = DEFAULT_MODEL,
                    grid: Sequence[float] | None = None,
                    max_t_layer: float | None = None,
                    thresholds: PhaseThresholds = PhaseThresholds()) -> OptimalLayer:
    """T gates per layer minimising the GoSC qubit count that meets ``target``.

    Each grid value fixes the depth at ``t_count / t_layer`` and takes the
    fewest units meeting the target. The first minimum wins ties. If a
    beat-limited layout already meets the target the reported optimum is 0.
    ``max_t_layer`` defaults to ``n``.
    """
    base = LogicalRequirements(n, t_count=t_count)
    beat = estimate_beat_limited(base, profile, budget, model)
    if beat.runtime <= target:
        return OptimalLayer(0.0, beat, Phase.NO_PARALLELIZATION)
    if grid is None:
        grid = t_layer_grid(n if max_t_layer is None else max_t_layer)
    scan = []
    best = None
    for t_layer in grid:
        depth = max(1, round(t_count / t_layer))
        spec = LogicalRequirements(n, t_count=t_count, measurement_depth=depth)
        try:
            est = min_qubits_for_runtime(spec, profile, target, Strategy.GOSC, budget, model)
        except TargetUnreachable:
            est = None
        scan.append(LayerScanPoint(float(t_layer), est))
        if est is not None and (best is None
                                or est.total_physical_qubits < best[1].total_physical_qubits):
            best = (float(t_layer), est)
    if best is None:
        raise TargetUnreachable(
            f"no T-per-layer value up to {grid[-1]:.4g} meets the {target:.4g} s target")
    t_layer, est = best
    smallest_feasible = next(pt.t_layer for pt in scan if pt.estimate is not None)
    if scan[0].estimate is None and t_layer <= smallest_feasible * thresholds.saturation_margin:
        phase = Phase.SATURATED
    elif est.unit_count < thresholds.equilibrium_min_units:
        phase = Phase.OSCILLATING
    else:
        phase = Phase.EQUILIBRIUM
    return OptimalLayer(t_layer, est, phase, scan)


def equilibrium_t_layer(n: int, t_counts: Sequence[int], profile: HardwareProfile,
                        target: float, budget: ErrorBudget = DEFAULT_BUDGET,
                        model: FactoryModel = DEFAULT_MODEL,
                        thresholds: PhaseThresholds = PhaseThresholds(),
                        per_decade: int = 60) -> tuple[float, list[OptimalLayer]]:
    """Mean optimal T per layer over the equilibrium-phase points of a T-count
    scan for ``n`` logical qubits."""
    grid = t_layer_grid(n, per_decade)
    results = []
    for t_count in t_counts:
        try:
            results.append(optimal_t_layer(n, int(t_count), profile, target, budget, model,
                                           grid, thresholds=thresholds))
        except TargetUnreachable:
            break
    eq = [r.t_layer for r in results if r.phase is Phase.EQUILIBRIUM]
    if not eq:
        raise InputError(f"no equilibrium-phase points for n={n}")
    return float(np.mean(eq)), results


# ---------------------------------------------------------------------------
# power law


@dataclass(frozen=True)
class PowerLawFit:
    coefficient: float
    exponent: float
    residual: float

    def __call__(self, x):
        return self.coefficient * np.asarray(x, dtype=float) ** self.exponent


def equilibrium_fit(points: Sequence[tuple[float, float]]) -> PowerLawFit:
    """Least-squares fit of ``y = c * x^k`` on log-log axes.

    ``residual`` is the root-mean-square residual in natural-log units.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or len(arr) < 3:
        raise InputError("equilibrium_fit needs at least 3 (x, y) points")
    if np.any(arr <= 0):
        raise InputError("power-law fit needs strictly positive values")
    lx, ly = np.log(arr[:, 0]), np.log(arr[:, 1])
    (k, log_c), *_ = np.linalg.lstsq(np.column_stack([lx, np.ones_like(lx)]), ly, rcond=None)
    resid = ly - (k * lx + log_c)
    return PowerLawFit(float(math.exp(log_c)), float(k), float(np.sqrt(np.mean(resid**2))))
