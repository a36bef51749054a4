"""Steady-state simulator for multi-qubit quantum absorption refrigerators."""

from .model import (
    BathSpec,
    EngineeredSectors,
    HeisenbergStar,
    SystemSpec,
)
from .lindblad import (
    GLOBAL,
    LOCAL,
    JumpChannel,
    Liouvillian,
    build_dissipators,
    build_liouvillian,
)
from .steadystate import (
    SteadyStateReport,
    solve_steady_state,
    steady_state_evolve,
    steady_state_nullspace,
)
from .thermo import ThermoRecord, compute_thermo
from .harness import RunConfig, run_point, run_sweep
from .presets import get_preset, list_presets

__version__ = "0.1.0"

__all__ = [
    "BathSpec",
    "EngineeredSectors",
    "HeisenbergStar",
    "SystemSpec",
    "GLOBAL",
    "LOCAL",
    "JumpChannel",
    "Liouvillian",
    "build_dissipators",
    "build_liouvillian",
    "SteadyStateReport",
    "solve_steady_state",
    "steady_state_evolve",
    "steady_state_nullspace",
    "ThermoRecord",
    "compute_thermo",
    "RunConfig",
    "run_point",
    "run_sweep",
    "get_preset",
    "list_presets",
    "__version__",
]
