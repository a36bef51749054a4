"""Configuration-driven runs and parameter sweeps.

A run is described by a JSON document (see README for the schema): system,
baths, master-equation mode, solver, optional sweep axes (dotted parameter
paths, 1 or 2), optional constraint rules evaluated at every grid point after
axis substitution, and the output target. Sweeps execute in parallel but the
output CSV is always assembled in grid order, so identical configs yield
bitwise-identical files.
"""

from __future__ import annotations

import copy
import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from . import model
from .lindblad import GLOBAL, LOCAL, build_dissipators, default_gap_tol, has_degenerate_levels
from .lindblad import Liouvillian
from .model import BathSpec, EngineeredSectors, HeisenbergStar, SystemSpec
from .qlinalg import eig_hermitian
from .steadystate import SteadyStateError, solve_steady_state
from .thermo import ThermoRecord, compute_thermo

__all__ = [
    "ConfigError",
    "RunConfig",
    "SweepRecord",
    "build_system",
    "build_baths",
    "apply_constraints",
    "flatten_params",
    "run_point",
    "run_sweep",
    "csv_columns",
]


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass
class RunConfig:
    """Parsed run document; ``params`` holds the mutable system/baths tree."""

    system: dict = field(default_factory=dict)
    baths: dict = field(default_factory=dict)
    master_equation: str = LOCAL
    solver: str = "auto"
    gap_tol: float | None = None
    sweep: list[dict] = field(default_factory=list)
    constraints: list[dict] = field(default_factory=list)
    output: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "RunConfig":
        known = {
            "system", "baths", "master_equation", "solver", "gap_tol",
            "sweep", "constraints", "output",
        }
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(
            system=copy.deepcopy(dict(doc.get("system", {}))),
            baths=copy.deepcopy(dict(doc.get("baths", {}))),
            master_equation=doc.get("master_equation", LOCAL),
            solver=doc.get("solver", "auto"),
            gap_tol=doc.get("gap_tol"),
            sweep=copy.deepcopy(list(doc.get("sweep", []))),
            constraints=copy.deepcopy(list(doc.get("constraints", []))),
            output=copy.deepcopy(dict(doc.get("output", {}))),
        )
        if cfg.master_equation not in (LOCAL, GLOBAL):
            raise ConfigError(
                f"master_equation must be 'local' or 'global', "
                f"got {cfg.master_equation!r}"
            )
        if cfg.solver not in ("auto", "nullspace", "evolve"):
            raise ConfigError(f"unknown solver {cfg.solver!r}")
        if len(cfg.sweep) > 2:
            raise ConfigError("at most two sweep axes are supported")
        return cfg

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        return {
            "system": copy.deepcopy(self.system),
            "baths": copy.deepcopy(self.baths),
            "master_equation": self.master_equation,
            "solver": self.solver,
            "gap_tol": self.gap_tol,
            "sweep": copy.deepcopy(self.sweep),
            "constraints": copy.deepcopy(self.constraints),
            "output": copy.deepcopy(self.output),
        }

    def base_params(self) -> dict:
        return {"system": copy.deepcopy(self.system), "baths": copy.deepcopy(self.baths)}


# ---------------------------------------------------------------------------
# dotted parameter paths

def set_path(params: dict, path: str, value) -> None:
    parts = path.split(".")
    node = params
    for key in parts[:-1]:
        if isinstance(node, list):
            node = node[int(key)]
        elif key in node:
            node = node[key]
        else:
            raise ConfigError(f"unknown parameter path {path!r} (at {key!r})")
    last = parts[-1]
    if isinstance(node, list):
        node[int(last)] = value
    elif isinstance(node, dict):
        if last not in node:
            raise ConfigError(f"unknown parameter path {path!r} (at {last!r})")
        node[last] = value
    else:
        raise ConfigError(f"path {path!r} does not address a container")


# ---------------------------------------------------------------------------
# constraint rules (fixed vocabulary, applied in order at every grid point)

def _targets_list(system: dict) -> list[float]:
    n = int(system["n"])
    e_c = system.get("E_c", 1.0)
    if isinstance(e_c, (int, float)):
        return [float(e_c)] * n
    if len(e_c) != n:
        raise ConfigError(f"E_c list must have length n={n}, got {len(e_c)}")
    return [float(x) for x in e_c]


def _room_key(system: dict) -> str:
    return "E_r" if system.get("topology", model.THREE_BATH) == model.THREE_BATH else "E_c0"


def _rule_self_contained(system: dict, rule: dict) -> None:
    n = int(system["n"])
    m_c = int(rule["m_c"])
    k = (m_c + n) / 2.0
    if k < 1:
        raise ConfigError(f"sector m_c={m_c} has no self-contained condition")
    solve_for = rule.get("solve_for", "E_r")
    room_key = _room_key(system)
    if solve_for == "E_r":
        base = float(np.mean(_targets_list(system)))
        system[room_key] = float(system["E_h"]) + k * base
    elif solve_for == "E_c":
        system["E_c"] = (float(system[room_key]) - float(system["E_h"])) / k
    else:
        raise ConfigError(f"self_contained solve_for must be E_r or E_c, got {solve_for!r}")


def _rule_uniform_ec(system: dict, rule: dict) -> None:
    system["E_c"] = float(rule["base"])


def _rule_disorder_ec(system: dict, rule: dict) -> None:
    # base defaults to the current first-target energy, which makes the rule
    # idempotent when chained after self_contained
    step = float(rule.get("step", 0.01))
    base = rule.get("base")
    if base is None:
        base = _targets_list(system)[0]
    n = int(system["n"])
    system["E_c"] = [float(base) + i * step for i in range(n)]


_RULES = {
    "self_contained": _rule_self_contained,
    "uniform_Ec": _rule_uniform_ec,
    "disorder_Ec": _rule_disorder_ec,
}


def apply_constraints(params: dict, constraints: list[dict]) -> dict:
    for rule in constraints:
        name = rule.get("rule")
        if name not in _RULES:
            raise ConfigError(
                f"unknown constraint rule {name!r}; available: {sorted(_RULES)}"
            )
        _RULES[name](params["system"], rule)
    return params


# ---------------------------------------------------------------------------
# building domain objects from a resolved parameter tree

def build_system(system: dict) -> SystemSpec:
    try:
        n = int(system["n"])
        topology = system.get("topology", model.THREE_BATH)
        e_h = float(system["E_h"])
    except KeyError as exc:
        raise ConfigError(f"system config missing {exc}") from exc
    targets = _targets_list(system)
    if topology == model.THREE_BATH:
        if "E_r" not in system:
            raise ConfigError("three-bath system config needs E_r")
        e_r, e_c = float(system["E_r"]), tuple(targets)
    elif topology == model.TWO_BATH:
        if "E_c0" not in system:
            raise ConfigError("two-bath system config needs E_c0")
        e_r, e_c = None, (float(system["E_c0"]), *targets)
    else:
        raise ConfigError(f"unknown topology {topology!r}")
    interaction = _build_interaction(system.get("interaction", {}), n, topology)
    try:
        return SystemSpec(
            n=n, topology=topology, E_h=e_h, E_r=e_r, E_c=e_c,
            interaction=interaction, g=float(system.get("g", 1.0)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _build_interaction(node: dict, n: int, topology: str):
    kind = node.get("type", "engineered")
    if kind == "engineered":
        if "single_sector_m" in node:
            m_c = int(round(float(node["single_sector_m"])))
            sectors = {m_c: float(node.get("g_sector", 1.0))}
        else:
            raw = node.get("sectors", {})
            if not raw:
                raise ConfigError("engineered interaction needs sectors")
            sectors = {int(k): float(v) for k, v in raw.items()}
        bad = sorted(set(sectors) - set(model.allowed_sectors(n)))
        if bad:
            raise ConfigError(
                f"sectors {bad} invalid for n={n}; allowed {model.allowed_sectors(n)}"
            )
        return EngineeredSectors(sectors)
    if kind == "star":
        if topology == model.TWO_BATH:
            return HeisenbergStar(J_h=float(node.get("J", -1.0)), J_r=None)
        return HeisenbergStar(
            J_h=float(node.get("J_h", -1.0)), J_r=float(node.get("J_r", -1.0))
        )
    raise ConfigError(f"unknown interaction type {kind!r}")


def build_baths(spec: SystemSpec, baths: dict) -> dict[str, BathSpec]:
    out = {}
    for label in spec.bath_labels:
        if label not in baths:
            raise ConfigError(f"missing bath {label!r} for {spec.topology}")
        node = baths[label]
        try:
            out[label] = BathSpec(
                label=label,
                T=float(node["T"]),
                f=float(node.get("f", 0.01)),
                Omega=float(node.get("Omega", 1e3)),
                kappa=float(node.get("kappa", 0.0)),
            )
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad bath {label!r}: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# flattened parameter columns

def flatten_params(params: dict) -> dict[str, Any]:
    """Scalar view of a resolved parameter tree (CSV column source)."""
    system, baths = params["system"], params["baths"]
    spec = build_system(system)
    flat: dict[str, Any] = {
        "n": spec.n,
        "topology": spec.topology,
        "E_h": spec.E_h,
        "g": spec.g,
    }
    if spec.topology == model.THREE_BATH:
        flat["E_r"] = spec.E_r
        for i, e in enumerate(spec.E_c, start=1):
            flat[f"E_c{i}"] = e
    else:
        for i, e in enumerate(spec.E_c):
            flat[f"E_c{i}"] = e
    interaction_node = system.get("interaction", {})
    if isinstance(spec.interaction, EngineeredSectors):
        flat["interaction_type"] = "engineered"
        if "single_sector_m" in interaction_node:
            # stable columns when the sector id itself is a sweep axis
            (m_c, g_mc), = spec.interaction.sectors.items()
            flat["single_sector_m"] = m_c
            flat["g_sector"] = g_mc
        else:
            for m_c, g_mc in sorted(spec.interaction.sectors.items()):
                flat[f"g_sector_{m_c}"] = g_mc
    else:
        flat["interaction_type"] = "star"
        flat["J_h"] = spec.interaction.J_h
        if spec.interaction.J_r is not None:
            flat["J_r"] = spec.interaction.J_r
    for label in spec.bath_labels:
        node = baths[label]
        flat[f"T_{label}"] = float(node["T"])
        flat[f"f_{label}"] = float(node.get("f", 0.01))
        flat[f"Omega_{label}"] = float(node.get("Omega", 1e3))
    flat["kappa"] = float(baths["c"].get("kappa", 0.0))
    return flat


# ---------------------------------------------------------------------------
# point execution

@dataclass
class SweepRecord:
    """One grid point: resolved parameters, observables, diagnostics."""

    grid_i: int
    grid_j: int
    params: dict[str, Any]
    observables: dict[str, float]
    regime: str
    residual: float | None
    status: str


def _solve_point(cfg: RunConfig, params: dict) -> tuple[ThermoRecord, Any, list[str]]:
    spec = build_system(params["system"])
    baths = build_baths(spec, params["baths"])
    warnings_: list[str] = []
    mode = cfg.master_equation
    if mode == GLOBAL:
        h_spec = eig_hermitian(model.system_hamiltonian(spec))
        tol = cfg.gap_tol if cfg.gap_tol is not None else default_gap_tol(h_spec.eigenvalues)
        if has_degenerate_levels(h_spec.eigenvalues, tol):
            warnings_.append("degenerate_spectrum")
    channels = build_dissipators(spec, baths, mode, cfg.gap_tol)
    liou = Liouvillian(model.system_hamiltonian(spec), channels)
    rho0 = model.thermal_product_state(spec, baths)
    report = solve_steady_state(liou, cfg.solver, rho0=rho0)
    record = compute_thermo(
        spec, baths, channels, report.rho, mode,
        liou.h_system, model.local_hamiltonian(spec),
    )
    return record, report, warnings_


def run_point(cfg: RunConfig, params: dict | None = None,
              grid_i: int = 0, grid_j: int = 0) -> SweepRecord:
    """Execute one fully resolved point; failures become an error status,
    never an exception (config errors excepted)."""
    if params is None:
        params = apply_constraints(cfg.base_params(), cfg.constraints)
    flat = flatten_params(params)
    try:
        record, report, warnings_ = _solve_point(cfg, params)
    except Exception as exc:  # a failed point must not abort the sweep
        return SweepRecord(
            grid_i=grid_i, grid_j=grid_j, params=flat, observables={},
            regime="", residual=None,
            status=f"error[{type(exc).__name__}: {exc}]",
        )
    spec = build_system(params["system"])
    obs: dict[str, float] = {}
    currents = record.heat_currents
    obs["Q_dot_h"] = currents.get("h")
    obs["Q_dot_r"] = currents.get("r")
    obs["Q_dot_c"] = currents.get("c")
    obs["W_dot_total"] = record.w_dot_total
    if "single_sector_m" not in flat:
        # per-sector columns are only stable when the sector set is fixed;
        # under a sector-id sweep the total carries the single sector's power
        for key in sorted(record.w_dot_parts, key=_part_sort_key):
            obs[f"W_dot_sector_{key}"] = record.w_dot_parts[key]
    obs["S_dot"] = record.s_dot
    obs["entropy_production"] = record.entropy_prod
    for label in spec.qubit_labels:
        temp = record.temperatures[label]
        obs[f"tau_{label}"] = temp.value
        if temp.flag:
            warnings_.append(f"tau_{label}:{temp.flag}")
    for label, delta in record.cooling.items():
        obs[f"Delta_{label}"] = delta
    status = "ok" if not warnings_ else "ok[" + ";".join(warnings_) + "]"
    return SweepRecord(
        grid_i=grid_i, grid_j=grid_j, params=flat, observables=obs,
        regime=record.regime, residual=report.residual, status=status,
    )


# ---------------------------------------------------------------------------
# sweep execution and CSV output

def _axis_values(axis: dict) -> np.ndarray:
    if "values" in axis:
        return np.asarray(axis["values"], dtype=float)
    try:
        return np.linspace(float(axis["min"]), float(axis["max"]), int(axis["steps"]))
    except KeyError as exc:
        raise ConfigError(f"sweep axis needs min/max/steps or values: {axis}") from exc


def _grid(cfg: RunConfig) -> list[tuple[int, int, dict]]:
    axes = cfg.sweep
    if not axes:
        params = apply_constraints(cfg.base_params(), cfg.constraints)
        return [(0, 0, params)]
    values = [_axis_values(a) for a in axes]
    points = []
    if len(axes) == 1:
        for i, v in enumerate(values[0]):
            params = cfg.base_params()
            set_path(params, axes[0]["path"], float(v))
            points.append((i, 0, apply_constraints(params, cfg.constraints)))
    else:
        for i, v0 in enumerate(values[0]):
            for j, v1 in enumerate(values[1]):
                params = cfg.base_params()
                set_path(params, axes[0]["path"], float(v0))
                set_path(params, axes[1]["path"], float(v1))
                points.append((i, j, apply_constraints(params, cfg.constraints)))
    return points


def _part_sort_key(key: str):
    stripped = key.lstrip("-")
    return (0, int(key)) if stripped.isdigit() else (1, key)


def csv_columns(cfg: RunConfig, sample: SweepRecord) -> list[str]:
    """Exact column order: grid indices, resolved scalar parameters
    (alphabetical), then the fixed observable block.

    The observable block is derived from the configuration (not from the
    sample's observables) so that failed points still produce the full,
    empty-valued column set.
    """
    param_cols = sorted(sample.params)
    base = apply_constraints(cfg.base_params(), cfg.constraints)
    spec = build_system(base["system"])
    if "single_sector_m" in base["system"].get("interaction", {}):
        part_keys = []
    elif isinstance(spec.interaction, EngineeredSectors):
        part_keys = [str(m) for m in sorted(spec.interaction.sectors)]
    else:
        part_keys = ["star"]
    w_cols = [f"W_dot_sector_{k}" for k in sorted(part_keys, key=_part_sort_key)]
    tau_cols = [f"tau_{q}" for q in spec.qubit_labels]
    delta_cols = [f"Delta_{spec.qubit_labels[p]}" for p in spec.target_indices]
    return (
        ["grid_i", "grid_j"]
        + param_cols
        + ["Q_dot_h", "Q_dot_r", "Q_dot_c", "W_dot_total"]
        + w_cols
        + ["S_dot", "entropy_production"]
        + tau_cols
        + delta_cols
        + ["regime", "residual", "status"]
    )


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def run_sweep(cfg: RunConfig, out_path: str, workers: int | None = None) -> str:
    """Run the grid and write the CSV plus a sidecar JSON with the resolved
    configuration. Returns the CSV path."""
    points = _grid(cfg)
    if workers is None:
        workers = min(4, os.cpu_count() or 1)

    def job(point):
        i, j, params = point
        return run_point(cfg, params, grid_i=i, grid_j=j)

    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(job, points))
    else:
        records = [job(p) for p in points]

    columns = csv_columns(cfg, records[0])
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for rec in records:
            row = {"grid_i": rec.grid_i, "grid_j": rec.grid_j,
                   **rec.params, **rec.observables,
                   "regime": rec.regime, "residual": rec.residual,
                   "status": rec.status}
            writer.writerow([_format(row.get(col)) for col in columns])
    sidecar = os.path.splitext(out_path)[0] + ".json"
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(cfg.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return out_path
