"""Named run configurations reproducing the reference parameter sets.

Every preset is a complete RunConfig document; `--override` on the CLI (or
plain dict surgery) adapts them. Shared baseline: T_h=10, T_r=2, T_c=2,
f=0.01, Omega=1e3, all quantities dimensionless.
"""

from __future__ import annotations

import copy

from .harness import ConfigError, RunConfig

__all__ = ["list_presets", "get_preset", "PRESETS"]


def _baths3(kappa: float = 0.0) -> dict:
    return {
        "h": {"T": 10.0, "f": 0.01, "Omega": 1e3},
        "r": {"T": 2.0, "f": 0.01, "Omega": 1e3},
        "c": {"T": 2.0, "f": 0.01, "Omega": 1e3, "kappa": kappa},
    }


def _baths2(kappa: float = 0.0) -> dict:
    return {
        "h": {"T": 10.0, "f": 0.01, "Omega": 1e3},
        "c": {"T": 2.0, "f": 0.01, "Omega": 1e3, "kappa": kappa},
    }


def _fig3a() -> dict:
    # LQME, n=2, single sector m_c=0, g_(m_c)=0.05; cooling peak at E_r=5
    return {
        "system": {
            "n": 2, "topology": "three_bath",
            "E_h": 4.0, "E_r": 5.0, "E_c": 1.0,
            "interaction": {"type": "engineered", "sectors": {"0": 0.05}},
            "g": 1.0,
        },
        "baths": _baths3(),
        "master_equation": "local",
        "solver": "auto",
        "sweep": [{"path": "system.E_r", "min": 4.2, "max": 7.0, "steps": 100}],
        "output": {"path": "fig3a.csv"},
    }


def _fig3b() -> dict:
    # per-sector curves at fixed n; the scatter takes the max over E_r per
    # sector (rerun with --override system.n=... to assemble the n axis)
    return {
        "system": {
            "n": 2, "topology": "three_bath",
            "E_h": 4.0, "E_r": 5.0, "E_c": 1.0,
            "interaction": {
                "type": "engineered", "single_sector_m": 0, "g_sector": 0.05,
            },
            "g": 1.0,
        },
        "baths": _baths3(),
        "master_equation": "local",
        "solver": "auto",
        "sweep": [
            {"path": "system.interaction.single_sector_m", "min": 0, "max": 2, "steps": 2},
            {"path": "system.E_r", "min": 4.5, "max": 7.0, "steps": 200},
        ],
        "output": {"path": "fig3b.csv"},
    }


def _fig4a() -> dict:
    # same sweep as fig3a; the figure reads the sector power column
    cfg = _fig3a()
    cfg["output"] = {"path": "fig4a.csv"}
    return cfg


def _fig5b() -> dict:
    # LQME landscape on E_r x T_r with E_c re-solved from the self-contained
    # condition at every grid point
    return {
        "system": {
            "n": 2, "topology": "three_bath",
            "E_h": 4.0, "E_r": 5.0, "E_c": 1.0,
            "interaction": {"type": "engineered", "sectors": {"0": 0.05}},
            "g": 1.0,
        },
        "baths": _baths3(),
        "master_equation": "local",
        "solver": "auto",
        "sweep": [
            {"path": "system.E_r", "min": 4.4, "max": 6.8, "steps": 41},
            {"path": "baths.r.T", "min": 2.0, "max": 8.0, "steps": 41},
        ],
        "constraints": [{"rule": "self_contained", "m_c": 0, "solve_for": "E_c"}],
        "output": {"path": "fig5b.csv"},
    }


def _fig5c() -> dict:
    # GQME landscape, self-contained enforced then disordered target energies
    return {
        "system": {
            "n": 2, "topology": "three_bath",
            "E_h": 4.0, "E_r": 5.0, "E_c": 1.0,
            "interaction": {"type": "engineered", "sectors": {"0": 1.0}},
            "g": 1.0,
        },
        "baths": _baths3(),
        "master_equation": "global",
        "solver": "auto",
        "sweep": [
            {"path": "system.E_r", "min": 4.4, "max": 6.8, "steps": 13},
            {"path": "baths.r.T", "min": 0.5, "max": 8.0, "steps": 13},
        ],
        "constraints": [
            {"rule": "self_contained", "m_c": 0, "solve_for": "E_c"},
            {"rule": "disorder_Ec", "step": 0.01},
        ],
        "output": {"path": "fig5c.csv"},
    }


def _fig6a() -> dict:
    # GQME, g_(m_c)=1, disordered targets (1, 1.01)
    return {
        "system": {
            "n": 2, "topology": "three_bath",
            "E_h": 4.0, "E_r": 5.0, "E_c": [1.0, 1.01],
            "interaction": {"type": "engineered", "sectors": {"0": 1.0}},
            "g": 1.0,
        },
        "baths": _baths3(),
        "master_equation": "global",
        "solver": "auto",
        "sweep": [{"path": "system.E_r", "min": 4.2, "max": 7.0, "steps": 100}],
        "output": {"path": "fig6a.csv"},
    }


def _fig6b() -> dict:
    cfg = _fig6a()
    cfg["system"]["interaction"] = {
        "type": "engineered", "single_sector_m": 0, "g_sector": 1.0,
    }
    cfg["sweep"] = [
        {"path": "system.interaction.single_sector_m", "min": 0, "max": 2, "steps": 2},
        {"path": "system.E_r", "min": 4.5, "max": 7.0, "steps": 100},
    ]
    cfg["output"] = {"path": "fig6b.csv"}
    return cfg


def _fig7() -> dict:
    # two-bath engineered model: c0 heats while the targets cool
    return {
        "system": {
            "n": 2, "topology": "two_bath",
            "E_h": 4.0, "E_c0": 5.0, "E_c": 1.0,
            "interaction": {"type": "engineered", "sectors": {"0": 0.05}},
            "g": 1.0,
        },
        "baths": _baths2(),
        "master_equation": "local",
        "solver": "auto",
        "sweep": [{"path": "system.E_c0", "min": 4.2, "max": 7.0, "steps": 100}],
        "output": {"path": "fig7.csv"},
    }


def _fig8a() -> dict:
    # three-bath Heisenberg star, cooling driven by E_h
    return {
        "system": {
            "n": 2, "topology": "three_bath",
            "E_h": 4.0, "E_r": 10.0, "E_c": [1.0, 1.01],
            "interaction": {"type": "star", "J_h": -1.0, "J_r": -1.0},
            "g": 1.0,
        },
        "baths": _baths3(),
        "master_equation": "global",
        "solver": "auto",
        "sweep": [{"path": "system.E_h", "min": 1.0, "max": 8.0, "steps": 71}],
        "output": {"path": "fig8a.csv"},
    }


def _fig8b() -> dict:
    # two-bath star (single center h); E_c0 sits with the targets
    return {
        "system": {
            "n": 2, "topology": "two_bath",
            "E_h": 10.0, "E_c0": 0.99, "E_c": [1.0, 1.01],
            "interaction": {"type": "star", "J": -1.0},
            "g": 1.0,
        },
        "baths": _baths2(),
        "master_equation": "global",
        "solver": "auto",
        "sweep": [{"path": "system.E_h", "min": 4.0, "max": 16.0, "steps": 61}],
        "output": {"path": "fig8b.csv"},
    }


def _fig8c() -> dict:
    # three-bath star landscape: cooling everywhere, regimes R3/R4 only
    return {
        "system": {
            "n": 2, "topology": "three_bath",
            "E_h": 4.0, "E_r": 10.0, "E_c": [1.0, 1.01],
            "interaction": {"type": "star", "J_h": -1.0, "J_r": -1.0},
            "g": 1.0,
        },
        "baths": _baths3(),
        "master_equation": "global",
        "solver": "auto",
        "sweep": [
            {"path": "system.E_r", "min": 6.0, "max": 14.0, "steps": 9},
            {"path": "baths.r.T", "min": 1.0, "max": 6.0, "steps": 9},
        ],
        "output": {"path": "fig8c.csv"},
    }


PRESETS = {
    "fig3a": _fig3a,
    "fig3b": _fig3b,
    "fig4a": _fig4a,
    "fig5b": _fig5b,
    "fig5c": _fig5c,
    "fig6a": _fig6a,
    "fig6b": _fig6b,
    "fig7": _fig7,
    "fig8a": _fig8a,
    "fig8b": _fig8b,
    "fig8c": _fig8c,
}


def list_presets() -> list[str]:
    return sorted(PRESETS)


def get_preset(name: str) -> RunConfig:
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(list_presets())}"
        )
    return RunConfig.from_dict(copy.deepcopy(PRESETS[name]()))
