"""Scenario files, presets, duration parsing and (de)serialization.

Scenario and model-config files are JSON objects with a top-level
``"version": 1`` field. Unknown fields are rejected with the dotted path of
the offending key.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

from .core_model import ErrorBudget, FailureAccount
from .errors import InputError
from .factories import AutoCCZDesign, TFactoryDesign
from .logical_spec import LogicalRequirements
from .strategies import GoSCUnitGeometry, PhysicalEstimate, Regime, Strategy
from .sweeps import SweepSeries

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Scenario:
    name: str
    logical: LogicalRequirements
    budget: ErrorBudget = field(default_factory=ErrorBudget)
    notes: str = ""


PRESETS = {
    "femoco": Scenario(
        "femoco",
        LogicalRequirements(logical_qubits=2196, toffoli_count=6_700_000_000),
        notes=("FeMoco ground-state energy, THC qubitization of Lee et al. (PRX Quantum 2, "
               "030305, 2021): 2196 logical qubits, 6.7e9 Toffoli gates. Measurement depth "
               "is unpublished; supply depth_fraction (e.g. 1/100).")),
    "bitcoin-ec256": Scenario(
        "bitcoin-ec256",
        LogicalRequirements(logical_qubits=2871, t_count=5_760_000_000,
                            measurement_depth=18_800_000),
        notes=("256-bit elliptic-curve discrete log, depth-optimised circuit of Haner et al. "
               "(PQCrypto 2020): 2871 logical qubits, 5.76e9 T gates, T depth 1.88e7.")),
}

_LOGICAL_FIELDS = {"logical_qubits", "toffoli_count", "t_count", "measurement_depth",
                   "depth_fraction"}
_BUDGET_FIELDS = {"topological_budget", "distillation_budget"}
_SCENARIO_FIELDS = {"version", "name", "logical", "budget", "notes"}

_DURATION_UNITS = {"us": 1e-6, "µs": 1e-6, "ms": 1e-3, "s": 1.0, "min": 60.0,
                   "h": 3600.0, "day": 86400.0, "days": 86400.0}
_DURATION_RE = re.compile(r"^\s*([0-9.eE+-]+)\s*([a-zµ]*)\s*$")


def parse_duration(text: str | float) -> float:
    """Seconds from ``"1e-6"``, ``"235us"``, ``"10 min"``, ``"1h"``, ``"2day"``..."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _DURATION_RE.match(text)
    if not m:
        raise InputError(f"cannot parse duration {text!r}")
    number, unit = m.groups()
    if unit and unit not in _DURATION_UNITS:
        raise InputError(f"unknown duration unit {unit!r} in {text!r}")
    try:
        value = float(number)
    except ValueError:
        raise InputError(f"cannot parse duration {text!r}") from None
    return value * _DURATION_UNITS.get(unit, 1.0)


def parse_fraction(value: Any) -> Fraction:
    try:
        return Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse fraction {value!r}") from None


def read_json_document(path: Path) -> dict:
    """Parse a versioned JSON document, reporting line and column on syntax
    errors."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        raise InputError(f"{path}: version: expected {FORMAT_VERSION}, got {doc.get('version')!r}")
    return doc


def _check_keys(obj: Any, allowed: set[str], where: str) -> dict:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise InputError(f"{where}.{unknown[0]}: unknown field")
    return obj


def _count(value: Any, where: str) -> int | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
        raise InputError(f"{where}: expected a whole number, got {value!r}")
    return int(value)


def scenario_from_dict(doc: dict, where: str = "scenario") -> Scenario:
    _check_keys(doc, _SCENARIO_FIELDS, where)
    logical = _check_keys(doc.get("logical"), _LOGICAL_FIELDS, f"{where}.logical")
    budget = _check_keys(doc.get("budget", {}), _BUDGET_FIELDS, f"{where}.budget")
    if "logical_qubits" not in logical:
        raise InputError(f"{where}.logical.logical_qubits: required field missing")
    try:
        spec = LogicalRequirements(
            logical_qubits=_count(logical["logical_qubits"], f"{where}.logical.logical_qubits"),
            toffoli_count=_count(logical.get("toffoli_count"), f"{where}.logical.toffoli_count"),
            t_count=_count(logical.get("t_count"), f"{where}.logical.t_count"),
            measurement_depth=_count(logical.get("measurement_depth"),
                                     f"{where}.logical.measurement_depth"),
            depth_fraction=(None if logical.get("depth_fraction") is None
                            else parse_fraction(logical["depth_fraction"])))
        err = ErrorBudget(**budget)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None
    return Scenario(str(doc.get("name", "unnamed")), spec, err, str(doc.get("notes", "")))


def load_scenario(source: str | Path) -> Scenario:
    """Load a preset by name or a scenario JSON file by path."""
    if isinstance(source, str) and source in PRESETS:
        return PRESETS[source]
    path = Path(source)
    if not path.exists():
        raise InputError(f"unknown preset or missing file: {source!s} "
                         f"(presets: {', '.join(sorted(PRESETS))})")
    return scenario_from_dict(read_json_document(path), str(path))


def scenario_to_dict(sc: Scenario) -> dict:
    lg = sc.logical
    logical = {"logical_qubits": lg.logical_qubits}
    for key in ("toffoli_count", "t_count", "measurement_depth"):
        if getattr(lg, key) is not None:
            logical[key] = getattr(lg, key)
    if lg.depth_fraction is not None:
        logical["depth_fraction"] = str(lg.depth_fraction)
    return {"version": FORMAT_VERSION, "name": sc.name, "logical": logical,
            "budget": {"topological_budget": sc.budget.topological_budget,
                       "distillation_budget": sc.budget.distillation_budget},
            "notes": sc.notes}


# ---------------------------------------------------------------------------
# estimates


def factory_to_dict(design) -> dict:
    if isinstance(design, AutoCCZDesign):
        return {"kind": "autoccz",
                "level1_distance": design.d1,
                "level2_distance": design.d2,
                "footprint_physical_qubits": design.footprint_physical_qubits,
                "duration_cycles": design.duration_cycles,
                "output_error_prob": design.output_error}
    return {"kind": "t",
            "output_distance": design.distance,
            "level1_distance": design.level1_distance,
            "level1_blocks_count": design.level1_blocks,
            "footprint_tiles": design.footprint_tiles,
            "footprint_physical_qubits": design.footprint_physical_qubits,
            "duration_cycles": design.duration_cycles,
            "output_error_prob": design.output_error}


def factory_from_dict(d: dict):
    if d["kind"] == "autoccz":
        return AutoCCZDesign(d["level1_distance"], d["level2_distance"],
                             d["footprint_physical_qubits"], d["duration_cycles"],
                             d["output_error_prob"])
    return TFactoryDesign(d["output_distance"], d["footprint_tiles"],
                          d["footprint_physical_qubits"], d["duration_cycles"],
                          d["output_error_prob"], d["level1_distance"], d["level1_blocks_count"])


def estimate_to_dict(e: PhysicalEstimate) -> dict:
    out = {
        "strategy": e.strategy.value,
        "limiting_regime": e.limiting_regime.value,
        "total_physical_qubits": e.total_physical_qubits,
        "runtime_s": e.runtime,
        "total_cycles": e.total_cycles,
        "data_distance": e.data_distance,
        "data_tiles": e.data_tiles,
        "factory_count": e.factory_count,
        "unit_count": e.unit_count,
        "time_optimal_count": e.max_count,
        "topological_error_prob": e.failure.topological_error,
        "distillation_error_prob": e.failure.distillation_error,
        "total_error_prob": e.failure.total,
        "distance_iterations_count": e.distance_iterations,
        "factory": factory_to_dict(e.factory_design),
        "gosc": None,
    }
    if e.gosc is not None:
        out["gosc"] = {"unit_tiles": e.gosc.unit_tiles,
                       "unit_time_beats": e.gosc.unit_time_beats,
                       "factories_per_unit_count": e.gosc.factories_per_unit}
    return out


def estimate_from_dict(d: dict) -> PhysicalEstimate:
    g = d.get("gosc")
    return PhysicalEstimate(
        strategy=Strategy(d["strategy"]),
        total_physical_qubits=d["total_physical_qubits"],
        runtime=d["runtime_s"],
        data_distance=d["data_distance"],
        data_tiles=d["data_tiles"],
        factory_design=factory_from_dict(d["factory"]),
        factory_count=d["factory_count"],
        unit_count=d["unit_count"],
        limiting_regime=Regime(d["limiting_regime"]),
        failure=FailureAccount(d["topological_error_prob"], d["distillation_error_prob"],
                               d["total_error_prob"]),
        total_cycles=d["total_cycles"],
        distance_iterations=d["distance_iterations_count"],
        gosc=None if g is None else GoSCUnitGeometry(g["unit_tiles"], g["unit_time_beats"],
                                                     g["factories_per_unit_count"]),
        max_count=d["time_optimal_count"],
    )


def to_json(obj: dict) -> str:
    return json.dumps(obj, indent=2)


def estimate_to_json(e: PhysicalEstimate) -> str:
    return to_json(estimate_to_dict(e))


def estimate_from_json(text: str) -> PhysicalEstimate:
    return estimate_from_dict(json.loads(text))


def sweep_to_dict(series: SweepSeries) -> dict:
    return {"axis_name": series.axis_name,
            "termination": series.termination.value,
            "stopped_at": (None if series.stopped_at is None
                           else {series.axis_name: series.stopped_at}),
            "samples": [{series.axis_name: x, "estimate": estimate_to_dict(e)}
                        for x, e in series.samples]}


CSV_COLUMNS = ["x", "total_physical_qubits", "runtime_s", "data_distance", "factory_count",
               "unit_count", "regime", "topo_error", "dist_error"]


def write_sweep_csv(series: SweepSeries, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for x, e in series.samples:
        w.writerow([repr(x), e.total_physical_qubits, repr(e.runtime), e.data_distance,
                    e.factory_count, e.unit_count, e.limiting_regime.value,
                    repr(e.failure.topological_error), repr(e.failure.distillation_error)])


def flatten(d: dict, prefix: str = "") -> list[tuple[str, Any]]:
    rows = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            rows.extend(flatten(v, key + "."))
        elif isinstance(v, list):
            for i, item in enumerate(v):
                rows.extend(flatten(item, f"{key}[{i}].") if isinstance(item, dict)
                            else [(f"{key}[{i}]", item)])
        else:
            rows.append((key, v))
    return rows


def format_table(d: dict) -> str:
    """Aligned ``key  value`` lines carrying exactly the JSON content."""
    rows = flatten(d)
    if not rows:
        return ""
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {json.dumps(v)}" for k, v in rows)
