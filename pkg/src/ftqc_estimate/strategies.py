"""Surface-code strategy estimators.

Three ways of running an algorithm are modelled:

``BEAT_LIMITED``
    One fast data block consuming a T state per beat (``d`` code cycles),
    fed by just enough T factories.
``GOSC``
    Units, each a full data block plus its own T factories, processing
    measurement layers round-robin; adding units trades qubits for time
    until one reaction time per layer is reached.
``AUTOCCZ``
    A single data block fed by AutoCCZ factories; adding factories trades
    qubits for time up to the same reaction-limited floor.

Runtime and data distance are mutually dependent (the distance is set by
the total cycle count, and the beat length is set by the distance), so data
distances are found by fixed-point iteration from ``d = 25``. Every map
iterated here is non-decreasing in ``d``, so the iteration is monotone and
cannot oscillate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .core_model import (DEFAULT_D_MAX, ErrorBudget, FailureAccount, HardwareProfile,
                         calibrate_code_distance, failure_account, physical_qubits_per_tile,
                         topological_error)
from .errors import (BudgetTooSmall, FactoryCountOutOfRange, FixedPointDivergence,
                     InputError, TargetUnreachable, UnitCountOutOfRange)
from .factories import (DEFAULT_MODEL, AutoCCZDesign, FactoryModel, TFactoryDesign,
                        calibrate_autoccz, calibrate_t_factory, per_state_budget,
                        routing_factor)
from .logical_spec import GateCurrency, LogicalRequirements, effective_count

DEFAULT_BUDGET = ErrorBudget()
INITIAL_DISTANCE = 25
MAX_FIXED_POINT_ITERATIONS = 20
GOSC_MIN_UNITS = 3


class Strategy(enum.Enum):
    BEAT_LIMITED = "beat"
    GOSC = "gosc"
    AUTOCCZ = "autoccz"

    @property
    def currency(self) -> GateCurrency:
        if self is Strategy.AUTOCCZ:
            return GateCurrency.CCZ_STATE
        return GateCurrency.T_GATE


class Regime(enum.Enum):
    BEAT = "beat"
    TICK = "tick"
    REACTION = "reaction"


@dataclass(frozen=True)
class GoSCUnitGeometry:
    unit_tiles: int
    unit_time_beats: int
    factories_per_unit: int


@dataclass(frozen=True)
class PhysicalEstimate:
    strategy: Strategy
    total_physical_qubits: int
    runtime: float
    data_distance: int
    data_tiles: int
    factory_design: TFactoryDesign | AutoCCZDesign
    factory_count: int
    unit_count: int
    limiting_regime: Regime
    failure: FailureAccount
    total_cycles: float
    distance_iterations: int = 1
    gosc: GoSCUnitGeometry | None = None
    max_count: int | None = None

    @property
    def runtime_days(self) -> float:
        return self.runtime / 86400


def _fixed_point_distance(tiles: float, cycles_at: Callable[[int], float], p: float,
                          budget: float, d_max: int) -> tuple[int, int]:
    d = INITIAL_DISTANCE
    for i in range(1, MAX_FIXED_POINT_ITERATIONS + 1):
        new = calibrate_code_distance(tiles, cycles_at(d), p, budget, d_max)
        if new == d:
            return d, i
        d = new
    raise FixedPointDivergence(
        f"distance iteration did not settle within {MAX_FIXED_POINT_ITERATIONS} steps")


def _depth_floor(spec: LogicalRequirements, profile: HardwareProfile) -> float:
    return spec.depth * profile.rt if spec.has_depth else 0.0


def time_optimal_runtime(spec: LogicalRequirements, profile: HardwareProfile) -> float:
    """One reaction time per measurement layer."""
    return spec.depth * profile.rt


# ---------------------------------------------------------------------------
# beat limited


def fast_data_block_tiles(n: int) -> int:
    return 2 * n + math.ceil(math.sqrt(8 * n)) + 1


def estimate_beat_limited(spec: LogicalRequirements, profile: HardwareProfile,
                          budget: ErrorBudget = DEFAULT_BUDGET,
                          model: FactoryModel = DEFAULT_MODEL,
                          d_max: int = DEFAULT_D_MAX) -> PhysicalEstimate:
    p, cc = profile.p, profile.cc
    t_count = effective_count(spec, GateCurrency.T_GATE)
    tiles = fast_data_block_tiles(spec.logical_qubits)
    factory = calibrate_t_factory(p, per_state_budget(budget.distillation_budget, t_count),
                                  2, model)
    floor_cycles = _depth_floor(spec, profile) / cc

    def cycles_at(d):
        return max(t_count * d, floor_cycles)

    d, iterations = _fixed_point_distance(tiles, cycles_at, p, budget.topological_budget, d_max)
    cycles = cycles_at(d)
    n_factories = math.ceil(factory.duration_cycles / d)
    qubits = tiles * physical_qubits_per_tile(d) + n_factories * factory.footprint_physical_qubits
    regime = Regime.REACTION if floor_cycles > t_count * d else Regime.BEAT
    return PhysicalEstimate(
        Strategy.BEAT_LIMITED, qubits, cycles * cc, d, tiles, factory, n_factories, 1, regime,
        failure_account(topological_error(tiles, cycles, p, d),
                        min(1.0, t_count * factory.output_error)),
        cycles, iterations)


# ---------------------------------------------------------------------------
# Game of Surface Codes units


def gosc_unit_geometry(n: int, t_layer: float, factory: TFactoryDesign | None = None,
                       d: int | None = None) -> GoSCUnitGeometry:
    """Unit footprint (tiles) and per-layer processing time (beats).

    ``factories_per_unit`` is filled in when a factory and distance are given:
    enough factories to deliver ``t_layer`` states per unit time.
    """
    root = math.sqrt(n)
    tiles = 4 * n + 4 * math.ceil(root) + 1 + 2 * math.ceil(t_layer)
    beats = math.ceil(t_layer + root + 3)
    per_unit = 0
    if factory is not None and d is not None:
        per_unit = math.ceil(t_layer * factory.duration_cycles / (beats * d))
    return GoSCUnitGeometry(tiles, beats, per_unit)


def _gosc_parts(spec, profile, budget, model):
    t_count = effective_count(spec, GateCurrency.T_GATE)
    t_layer = t_count / spec.depth
    factory = calibrate_t_factory(profile.p,
                                  per_state_budget(budget.distillation_budget, t_count),
                                  2, model)
    return t_count, t_layer, factory, gosc_unit_geometry(spec.logical_qubits, t_layer)


def _max_units(beats: int, d: int, profile: HardwareProfile) -> int:
    unit_time = beats * d * profile.cc
    return max(GOSC_MIN_UNITS, math.floor(unit_time / profile.rt) + 1)


def estimate_gosc_units(spec: LogicalRequirements, profile: HardwareProfile, units: int,
                        budget: ErrorBudget = DEFAULT_BUDGET,
                        model: FactoryModel = DEFAULT_MODEL,
                        d_max: int = DEFAULT_D_MAX) -> PhysicalEstimate:
    """Estimate for a linear arrangement of ``units`` GoSC units.

    Runtime pipelines layers across units: ``depth * max(t_u / units, RT)``
    where ``t_u`` is the unit time in seconds.
    """
    if units < GOSC_MIN_UNITS:
        raise UnitCountOutOfRange(f"GoSC needs at least {GOSC_MIN_UNITS} units, got {units}")
    p, cc, rt = profile.p, profile.cc, profile.rt
    t_count, t_layer, factory, geom = _gosc_parts(spec, profile, budget, model)
    depth = spec.depth
    tiles = units * geom.unit_tiles

    def cycles_at(d):
        return depth * max(geom.unit_time_beats * d / units, rt / cc)

    d, iterations = _fixed_point_distance(tiles, cycles_at, p, budget.topological_budget, d_max)
    n_max = _max_units(geom.unit_time_beats, d, profile)
    if units > n_max:
        raise UnitCountOutOfRange(f"{units} units exceeds the time-optimal count {n_max}")
    geom = gosc_unit_geometry(spec.logical_qubits, t_layer, factory, d)
    unit_time = geom.unit_time_beats * d * cc
    cycles = cycles_at(d)
    per_unit = (geom.unit_tiles * physical_qubits_per_tile(d)
                + geom.factories_per_unit * factory.footprint_physical_qubits)
    regime = Regime.REACTION if unit_time / units <= rt else Regime.TICK
    return PhysicalEstimate(
        Strategy.GOSC, units * per_unit, cycles * cc, d, tiles, factory,
        units * geom.factories_per_unit, units, regime,
        failure_account(topological_error(tiles, cycles, p, d),
                        min(1.0, t_count * factory.output_error)),
        cycles, iterations, geom, n_max)


def gosc_time_optimal_units(spec: LogicalRequirements, profile: HardwareProfile,
                            budget: ErrorBudget = DEFAULT_BUDGET,
                            model: FactoryModel = DEFAULT_MODEL,
                            d_max: int = DEFAULT_D_MAX) -> int:
    """Self-consistent unit count ``floor(t_u / RT) + 1`` at which GoSC
    becomes reaction limited (``t_u`` depends on the distance, which depends
    on the total tile count)."""
    _, _, _, geom = _gosc_parts(spec, profile, budget, model)
    cycles = spec.depth * profile.rt / profile.cc
    d = INITIAL_DISTANCE
    for _ in range(MAX_FIXED_POINT_ITERATIONS):
        n_max = _max_units(geom.unit_time_beats, d, profile)
        new = calibrate_code_distance(n_max * geom.unit_tiles, cycles, profile.p,
                                      budget.topological_budget, d_max)
        if new == d:
            return n_max
        d = new
    raise FixedPointDivergence("time-optimal unit count did not settle")


# ---------------------------------------------------------------------------
# AutoCCZ


def autoccz_max_factories(spec: LogicalRequirements, profile: HardwareProfile,
                          design: AutoCCZDesign) -> int:
    """Factory count at which production keeps pace with one layer per RT."""
    per_layer = effective_count(spec, GateCurrency.CCZ_STATE) / spec.depth
    return max(1, math.ceil(per_layer * design.duration_cycles * profile.cc / profile.rt))


def _autoccz_design(spec, profile, budget, model):
    ccz = effective_count(spec, GateCurrency.CCZ_STATE)
    return ccz, calibrate_autoccz(profile.p,
                                  per_state_budget(budget.distillation_budget, ccz), model)


def estimate_autoccz(spec: LogicalRequirements, profile: HardwareProfile, factories: int = 1,
                     budget: ErrorBudget = DEFAULT_BUDGET,
                     model: FactoryModel = DEFAULT_MODEL,
                     d_max: int = DEFAULT_D_MAX) -> PhysicalEstimate:
    """Estimate for one data block of ``n`` tiles fed by ``factories`` AutoCCZ
    factories, including the routing overhead factor.

    Without a known measurement depth only a single factory can be
    evaluated (the time-optimal limit, and with it the routing factor, is
    undefined).
    """
    p, cc = profile.p, profile.cc
    ccz, design = _autoccz_design(spec, profile, budget, model)
    n_max = autoccz_max_factories(spec, profile, design) if spec.has_depth else 1
    if not 1 <= factories <= n_max:
        raise FactoryCountOutOfRange(
            f"factory count {factories} outside 1..{n_max}"
            + ("" if spec.has_depth else " (no measurement depth given)"))
    production = ccz * design.duration_cycles * cc / factories
    floor = _depth_floor(spec, profile)
    runtime = max(production, floor)
    tiles = spec.logical_qubits
    d, iterations = _fixed_point_distance(tiles, lambda d: runtime / cc, p,
                                          budget.topological_budget, d_max)
    cycles = runtime / cc
    raw = tiles * physical_qubits_per_tile(d) + factories * design.footprint_physical_qubits
    qubits = math.ceil(raw * routing_factor(factories, n_max))
    regime = Regime.REACTION if floor >= production else Regime.TICK
    return PhysicalEstimate(
        Strategy.AUTOCCZ, qubits, runtime, d, tiles, design, factories, 1, regime,
        failure_account(topological_error(tiles, cycles, p, d),
                        min(1.0, ccz * design.output_error)),
        cycles, iterations, None, n_max)


# ---------------------------------------------------------------------------
# dispatch and inverse solvers


def estimate(spec: LogicalRequirements, profile: HardwareProfile, strategy: Strategy,
             count: int | None = None, budget: ErrorBudget = DEFAULT_BUDGET,
             model: FactoryModel = DEFAULT_MODEL) -> PhysicalEstimate:
    """Estimate one configuration; ``count`` is units (GoSC) or factories
    (AutoCCZ) and defaults to the minimal configuration."""
    if strategy is Strategy.BEAT_LIMITED:
        return estimate_beat_limited(spec, profile, budget, model)
    if strategy is Strategy.GOSC:
        return estimate_gosc_units(spec, profile, count or GOSC_MIN_UNITS, budget, model)
    return estimate_autoccz(spec, profile, count or 1, budget, model)


def _count_range(spec, profile, strategy, budget, model) -> tuple[int, int]:
    if strategy is Strategy.GOSC:
        return GOSC_MIN_UNITS, gosc_time_optimal_units(spec, profile, budget, model)
    if not spec.has_depth:
        return 1, 1
    _, design = _autoccz_design(spec, profile, budget, model)
    return 1, autoccz_max_factories(spec, profile, design)


def min_qubits_for_runtime(spec: LogicalRequirements, profile: HardwareProfile,
                           target: float, strategy: Strategy = Strategy.AUTOCCZ,
                           budget: ErrorBudget = DEFAULT_BUDGET,
                           model: FactoryModel = DEFAULT_MODEL) -> PhysicalEstimate:
    """Cheapest parallelization (fewest factories or units) finishing within
    ``target`` seconds.

    Runtime is non-increasing in the count, so the search bisects between
    the minimal configuration and the time-optimal one.
    """
    if not target > 0:
        raise InputError("target runtime must be positive")
    if strategy is Strategy.BEAT_LIMITED:
        est = estimate_beat_limited(spec, profile, budget, model)
        if est.runtime > target:
            raise TargetUnreachable(
                f"beat-limited runtime {est.runtime:.4g} s exceeds target {target:.4g} s")
        return est

    def at(count):
        return estimate(spec, profile, strategy, count, budget, model)

    lo, hi = _count_range(spec, profile, strategy, budget, model)
    best = at(hi)
    if best.runtime > target:
        raise TargetUnreachable(
            f"time-optimal runtime {best.runtime:.4g} s exceeds target {target:.4g} s")
    first = at(lo)
    if first.runtime <= target:
        return first
    # runtime(lo) > target >= runtime(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        est = at(mid)
        if est.runtime <= target:
            hi, best = mid, est
        else:
            lo = mid
    return best


def _last_with_distance(at, start: int, hi: int, d: int) -> int:
    """Largest count in ``[start, hi]`` still calibrated at distance ``d``
    (distance is non-increasing in the count)."""
    lo = start
    while hi > lo:
        mid = (lo + hi + 1) // 2
        if at(mid).data_distance == d:
            lo = mid
        else:
            hi = mid - 1
    return lo


def runtime_for_qubit_budget(spec: LogicalRequirements, profile: HardwareProfile,
                             qubit_budget: float, strategy: Strategy = Strategy.AUTOCCZ,
                             budget: ErrorBudget = DEFAULT_BUDGET,
                             model: FactoryModel = DEFAULT_MODEL) -> PhysicalEstimate:
    """Fastest configuration whose total qubit count fits ``qubit_budget``.

    Adding factories or units shortens the run, which can lower the data
    distance, so the qubit count is a sawtooth in the count rather than
    monotone. Within a stretch of constant distance it only grows, so each
    stretch is bisected separately and the largest fitting count wins.
    """
    if not qubit_budget > 0:
        raise InputError("qubit budget must be positive")
    if strategy is Strategy.BEAT_LIMITED:
        est = estimate_beat_limited(spec, profile, budget, model)
        if est.total_physical_qubits > qubit_budget:
            raise BudgetTooSmall(
                f"beat-limited layout needs {est.total_physical_qubits} qubits")
        return est

    cache: dict[int, PhysicalEstimate] = {}

    def at(count):
        if count not in cache:
            cache[count] = estimate(spec, profile, strategy, count, budget, model)
        return cache[count]

    lo, hi = _count_range(spec, profile, strategy, budget, model)
    stretches = []
    start = lo
    while start <= hi:
        end = _last_with_distance(at, start, hi, at(start).data_distance)
        stretches.append((start, end))
        start = end + 1
    for start, end in reversed(stretches):
        if at(start).total_physical_qubits > qubit_budget:
            continue
        while end > start:
            mid = (start + end + 1) // 2
            if at(mid).total_physical_qubits <= qubit_budget:
                start = mid
            else:
                end = mid - 1
        return at(start)
    smallest = min(at(start).total_physical_qubits for start, _ in stretches)
    raise BudgetTooSmall(
        f"smallest {strategy.value} configuration needs {smallest} qubits")
