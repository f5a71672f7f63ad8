"""Magic-state factories: error models, footprints, and distance calibration.

Two factory families are modelled.

* T factories built from 15-to-1 distillation blocks. A one-level block
  outputs ``35 e^3`` from inputs of error ``e`` (raw injection: ``e = p``).
  A two-level protocol feeds level-1 outputs into a level-2 block.
* AutoCCZ factories: level-1 15-to-1 T states feed an 8T-to-CCZ stage whose
  output error is ``28 e1^2``. With all topological terms suppressed this
  reduces to ``28 * 35^2 p^6 = 34300 p^6``.

Every stage adds a topological term ``(tiles x cycles) * p_L(p, d)`` for the
block volume it occupies at its own distance. Geometric constants live in
:class:`FactoryModel` and can be overridden from a JSON model-config file.
"""

from __future__ import annotations

import functools
import json
import math
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .core_model import check_error_rate, logical_error_rate, physical_qubits_per_tile
from .errors import CalibrationInfeasible, InputError

MODEL_CONFIG_ENV = "FTQC_MODEL_CONFIG"


@dataclass(frozen=True)
class FactoryModel:
    # AutoCCZ geometry: footprint tiles at d2, duration in units of d2 cycles.
    autoccz_footprint_tiles: int = 120
    autoccz_duration_per_d: float = 5.5
    footprint_multiplier: float = 1.0
    # Topological exposure of each AutoCCZ stage.
    autoccz_level1_tiles: int = 32
    autoccz_level1_duration_per_d: float = 5.75
    autoccz_level2_tiles: int = 18
    autoccz_level2_duration_per_d: float = 5.5
    # 15-to-1 T-factory block.
    t_factory_tiles: int = 11
    t_factory_duration_per_d: float = 11.0
    distance_min: int = 3
    distance_max: int = 49

    def __post_init__(self):
        if self.distance_min < 3 or self.distance_min % 2 == 0:
            raise InputError("distance_min must be odd and >= 3")
        if self.distance_max < self.distance_min:
            raise InputError("distance_max must be >= distance_min")
        if self.footprint_multiplier <= 0:
            raise InputError("footprint_multiplier must be positive")

    @property
    def grid(self) -> range:
        return range(self.distance_min, self.distance_max + 1, 2)


DEFAULT_MODEL = FactoryModel()


def load_factory_model(path: str | os.PathLike | None = None) -> FactoryModel:
    """Read factory constants from a JSON file.

    With no ``path`` the ``FTQC_MODEL_CONFIG`` environment variable is
    consulted; when that is unset too the compiled defaults are returned.
    """
    if path is None:
        path = os.environ.get(MODEL_CONFIG_ENV)
        if not path:
            return DEFAULT_MODEL
    from .io import read_json_document  # deferred: io imports this module

    doc = read_json_document(Path(path))
    known = {f.name for f in fields(FactoryModel)}
    body = doc.get("factory_model", {})
    if not isinstance(body, dict):
        raise InputError(f"{path}: factory_model must be an object")
    extra = set(doc) - {"version", "factory_model"}
    if extra:
        raise InputError(f"{path}: unknown top-level field(s) {sorted(extra)}")
    unknown = set(body) - known
    if unknown:
        raise InputError(f"{path}: factory_model: unknown field(s) {sorted(unknown)}")
    return replace(DEFAULT_MODEL, **body)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


# ---------------------------------------------------------------------------
# designs


@dataclass(frozen=True)
class TFactoryDesign:
    distance: int
    footprint_tiles: int
    footprint_physical_qubits: int
    duration_cycles: int
    output_error: float
    level1_distance: int | None = None
    level1_blocks: int = 0

    @property
    def levels(self) -> int:
        return 1 if self.level1_distance is None else 2

    @property
    def volume(self) -> float:
        return self.footprint_physical_qubits * self.duration_cycles


@dataclass(frozen=True)
class AutoCCZDesign:
    d1: int
    d2: int
    footprint_physical_qubits: int
    duration_cycles: int
    output_error: float

    @property
    def volume(self) -> float:
        return self.footprint_physical_qubits * self.duration_cycles


@dataclass(frozen=True)
class DistillationBudget:
    total_budget: float
    state_count: int

    @property
    def per_state(self) -> float:
        return per_state_budget(self.total_budget, self.state_count)


def per_state_budget(total_budget: float, state_count: int) -> float:
    if state_count < 1:
        raise InputError("state_count must be >= 1")
    return total_budget / state_count


def routing_factor(n_factories: int, n_factories_at_time_optimal: int) -> float:
    """Routing overhead: 1.01 with one factory rising linearly to 1.5 at the
    time-optimal factory count."""
    if not 1 <= n_factories <= n_factories_at_time_optimal:
        raise InputError(
            f"need 1 <= n_factories ({n_factories}) <= {n_factories_at_time_optimal}")
    span = max(1, n_factories_at_time_optimal - 1)
    return 1.01 + 0.49 * (n_factories - 1) / span


# ---------------------------------------------------------------------------
# AutoCCZ


def autoccz_duration_cycles(d2: int, model: FactoryModel = DEFAULT_MODEL) -> int:
    return _round_half_up(model.autoccz_duration_per_d * d2)


def autoccz_footprint(d2: int, model: FactoryModel = DEFAULT_MODEL) -> int:
    raw = model.autoccz_footprint_tiles * physical_qubits_per_tile(d2)
    return math.ceil(raw * model.footprint_multiplier)


def autoccz_level1_error(p: float, d1: int, model: FactoryModel = DEFAULT_MODEL) -> float:
    volume = model.autoccz_level1_tiles * model.autoccz_level1_duration_per_d * d1
    return 35 * p**3 + volume * logical_error_rate(p, d1)


def autoccz_output_error(p: float, d1: int, d2: int,
                         model: FactoryModel = DEFAULT_MODEL) -> float:
    """Error per CCZ state of a two-level AutoCCZ factory."""
    check_error_rate(p)
    e1 = autoccz_level1_error(p, d1, model)
    volume2 = model.autoccz_level2_tiles * model.autoccz_level2_duration_per_d * d2
    return 28 * e1**2 + volume2 * logical_error_rate(p, d2)


def autoccz_design(p: float, d1: int, d2: int,
                   model: FactoryModel = DEFAULT_MODEL) -> AutoCCZDesign:
    return AutoCCZDesign(d1, d2, autoccz_footprint(d2, model),
                         autoccz_duration_cycles(d2, model),
                         autoccz_output_error(p, d1, d2, model))


@functools.lru_cache(maxsize=4096)
def calibrate_autoccz(p: float, per_state_budget: float,
                      model: FactoryModel = DEFAULT_MODEL) -> AutoCCZDesign:
    """Minimum-volume (qubits x cycles) AutoCCZ design meeting the budget.

    Scans every (d1, d2) pair of the model's odd-distance grid; ties go to
    the smaller d2, then the smaller d1.
    """
    check_error_rate(p)
    if not per_state_budget > 0:
        raise InputError("per-state budget must be positive")
    best = None
    for d2 in model.grid:
        for d1 in model.grid:
            design = autoccz_design(p, d1, d2, model)
            if design.output_error > per_state_budget:
                continue
            key = (design.volume, d2, d1)
            if best is None or key < best[0]:
                best = (key, design)
    if best is None:
        raise CalibrationInfeasible(
            f"no AutoCCZ distance pair in {model.distance_min}..{model.distance_max} "
            f"reaches {per_state_budget:.3g} per state at p={p:g}")
    return best[1]


# ---------------------------------------------------------------------------
# T factories


def t_factory_duration_cycles(d: int, model: FactoryModel = DEFAULT_MODEL) -> int:
    return _round_half_up(model.t_factory_duration_per_d * d)


def _t_block_topological(p: float, d: int, model: FactoryModel) -> float:
    volume = model.t_factory_tiles * model.t_factory_duration_per_d * d
    return volume * logical_error_rate(p, d)


def t_factory_error(p: float, d_f: int, model: FactoryModel = DEFAULT_MODEL) -> float:
    """Error per T state from one 15-to-1 block at distance ``d_f``."""
    check_error_rate(p)
    return 35 * p**3 + _t_block_topological(p, d_f, model)


def two_level_t_factory_error(p: float, d1: int, d2: int,
                              model: FactoryModel = DEFAULT_MODEL) -> float:
    """Error per T state of a 15-to-1 x 15-to-1 protocol."""
    e1 = t_factory_error(p, d1, model)
    return 35 * e1**3 + _t_block_topological(p, d2, model)


def t_factory_design(p: float, d_f: int, model: FactoryModel = DEFAULT_MODEL) -> TFactoryDesign:
    tiles = model.t_factory_tiles
    return TFactoryDesign(d_f, tiles, tiles * physical_qubits_per_tile(d_f),
                          t_factory_duration_cycles(d_f, model), t_factory_error(p, d_f, model))


def two_level_t_factory_design(p: float, d1: int, d2: int,
                               model: FactoryModel = DEFAULT_MODEL) -> TFactoryDesign:
    """Level-2 block at ``d2`` fed by enough level-1 blocks at ``d1`` to
    deliver its 15 inputs within one level-2 round."""
    tiles = model.t_factory_tiles
    duration = t_factory_duration_cycles(d2, model)
    blocks = math.ceil(15 * t_factory_duration_cycles(d1, model) / duration)
    qubits = tiles * (physical_qubits_per_tile(d2) + blocks * physical_qubits_per_tile(d1))
    return TFactoryDesign(d2, tiles * (1 + blocks), qubits, duration,
                          two_level_t_factory_error(p, d1, d2, model),
                          level1_distance=d1, level1_blocks=blocks)


@functools.lru_cache(maxsize=4096)
def calibrate_t_factory(p: float, per_state_budget: float, max_levels: int = 1,
                        model: FactoryModel = DEFAULT_MODEL) -> TFactoryDesign:
    """Minimum-volume T factory meeting ``per_state_budget``.

    ``max_levels=1`` restricts the search to single 15-to-1 blocks;
    ``max_levels=2`` also considers the two-level protocol and keeps whichever
    design has the smaller volume (ties: one level, smaller distances).
    """
    check_error_rate(p)
    if not per_state_budget > 0:
        raise InputError("per-state budget must be positive")
    if max_levels not in (1, 2):
        raise InputError("max_levels must be 1 or 2")
    candidates = []
    for d in model.grid:
        design = t_factory_design(p, d, model)
        if design.output_error <= per_state_budget:
            candidates.append(((design.volume, 1, d, 0), design))
            break
    if max_levels == 2:
        for d2 in model.grid:
            for d1 in model.grid:
                design = two_level_t_factory_design(p, d1, d2, model)
                if design.output_error <= per_state_budget:
                    candidates.append(((design.volume, 2, d2, d1), design))
    if not candidates:
        raise CalibrationInfeasible(
            f"no {max_levels}-level T factory in {model.distance_min}..{model.distance_max} "
            f"reaches {per_state_budget:.3g} per state at p={p:g}")
    return min(candidates, key=lambda c: c[0])[1]
