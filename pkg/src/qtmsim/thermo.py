"""Steady-state thermodynamics: heat currents, power, entropy, temperatures.

Sign convention: a positive heat current means heat extracted *from* the
bath. Regime labels follow the sign table for (h, r, c) currents, with the
local currents used under the local master equation and the global ones
under the global equation; the reference Hamiltonian is always an explicit
argument, never inferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf, log
from typing import Mapping, Sequence

import numpy as np

from .lindblad import JumpChannel, apply_dissipator
from .model import (
    BathSpec,
    EngineeredSectors,
    SystemSpec,
    interaction_hamiltonian,
    qubit_gibbs,
    sector_interaction,
)
from .qlinalg import partial_trace, trace_distance

__all__ = [
    "LocalTemperature",
    "ThermoRecord",
    "heat_current",
    "heat_currents",
    "power",
    "interaction_parts",
    "entropy_production",
    "local_temperature_diagonal",
    "local_temperature_distance",
    "local_temperature",
    "local_temperatures",
    "cooling_amounts",
    "classify_regime",
    "compute_thermo",
]

EIGENVALUE_FLOOR = 1e-14   # support restriction for the matrix logarithm
DIAGONAL_TOL = 1e-10       # max off-diagonal for the closed-form estimator
DEFAULT_BRACKET = (1e-4, 1e3)

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LocalTemperature:
    """Estimated qubit temperature with the estimator used and any flag.

    Flags: "inverted" (excited population above 1/2, negative-temperature
    branch), "infinite" (population exactly 1/2), "bracket_edge" (distance
    minimizer pinned at the search bracket). Flagged values stay numeric so
    sweep outputs remain machine readable.
    """

    value: float
    method: str
    flag: str | None = None


def heat_current(
    channels: Sequence[JumpChannel], rho: np.ndarray, h_ref: np.ndarray
) -> float:
    """Tr[D_bath(rho) h_ref]; positive = heat extracted from the bath."""
    return float(np.trace(apply_dissipator(channels, rho) @ h_ref).real)


def heat_currents(
    channels_by_bath: Mapping[str, Sequence[JumpChannel]],
    rho: np.ndarray,
    h_ref: np.ndarray,
) -> dict[str, float]:
    return {
        label: heat_current(chs, rho, h_ref)
        for label, chs in channels_by_bath.items()
    }


def interaction_parts(spec: SystemSpec) -> dict[str, np.ndarray]:
    """The interaction Hamiltonian split into the parts entering the power,
    each including the global prefactor g. Engineered interactions produce
    one part per magnetization sector; a star interaction is one part."""
    if isinstance(spec.interaction, EngineeredSectors):
        return {
            str(m_c): spec.g * sector_interaction(spec, m_c)
            for m_c in sorted(spec.interaction.sectors)
        }
    return {"star": spec.g * interaction_hamiltonian(spec)}


def power(
    channels_by_bath: Mapping[str, Sequence[JumpChannel]],
    rho: np.ndarray,
    parts: Mapping[str, np.ndarray],
) -> tuple[float, dict[str, float]]:
    """Work imbalance of the local master equation, total and per part.

    W_part = Tr[(sum_a D_a(rho)) H_part]. Meaningful in the LQME context;
    under the GQME the first law makes the total vanish identically and the
    caller should report zero instead of calling this.
    """
    d_total = sum(
        (apply_dissipator(chs, rho) for chs in channels_by_bath.values()),
        start=np.zeros_like(np.asarray(rho, dtype=np.complex128)),
    )
    per_part = {
        key: float(np.trace(d_total @ h_part).real)
        for key, h_part in parts.items()
    }
    return sum(per_part.values()), per_part


def _support_log(rho: np.ndarray) -> np.ndarray:
    """Matrix logarithm restricted to eigenvalues above the support floor."""
    evals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2.0)
    keep = evals > EIGENVALUE_FLOOR
    logs = np.log(evals[keep])
    return (vecs[:, keep] * logs) @ vecs[:, keep].conj().T


def entropy_production(
    channels_by_bath: Mapping[str, Sequence[JumpChannel]],
    rho: np.ndarray,
    baths: Mapping[str, BathSpec],
    h_system: np.ndarray,
) -> tuple[float, float]:
    """Entropy rate S_dot = -Tr[sum_a D_a(rho) ln rho] and the production
    S_dot - sum_a Q_a / T_a, with the global currents (h_system reference)."""
    log_rho = _support_log(rho)
    d_by_bath = {
        label: apply_dissipator(chs, rho)
        for label, chs in channels_by_bath.items()
    }
    d_total = sum(d_by_bath.values())
    s_dot = -float(np.trace(d_total @ log_rho).real)
    flow = sum(
        float(np.trace(d_by_bath[label] @ h_system).real) / baths[label].T
        for label in d_by_bath
    )
    return s_dot, s_dot - flow


def local_temperature_diagonal(rho_qubit: np.ndarray, energy: float) -> LocalTemperature:
    """Closed-form temperature E / ln(1/p0 - 1) of a diagonal qubit state.

    p0 = <0|rho|0> is the excited-state population (module basis convention).
    p0 >= 1/2 is flagged rather than silently returned: "infinite" at exactly
    1/2, "inverted" (negative value) above.
    """
    rho_qubit = np.asarray(rho_qubit, dtype=np.complex128)
    if abs(rho_qubit[0, 1]) > DIAGONAL_TOL:
        raise ValueError(
            "reduced state has coherence beyond tolerance; "
            "use the distance estimator"
        )
    p0 = float(rho_qubit[0, 0].real)
    if p0 <= 0.0:
        return LocalTemperature(0.0, "diagonal")
    if p0 == 0.5:
        return LocalTemperature(inf, "diagonal", "infinite")
    tau = energy / log(1.0 / p0 - 1.0)
    if p0 > 0.5:
        return LocalTemperature(tau, "diagonal", "inverted")
    return LocalTemperature(tau, "diagonal")


def local_temperature_distance(
    rho_qubit: np.ndarray,
    energy: float,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tol: float = 1e-9,
) -> LocalTemperature:
    """Temperature minimizing the trace distance to a Gibbs state.

    Golden-section search over the bracket to absolute tolerance ``tol``; a
    minimizer pinned against either bracket edge is flagged "bracket_edge".
    """
    rho_qubit = np.asarray(rho_qubit, dtype=np.complex128)
    lo, hi = bracket

    def objective(tau: float) -> float:
        return trace_distance(rho_qubit, qubit_gibbs(energy, tau))

    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = objective(x1), objective(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = objective(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = objective(x2)
    tau = (a + b) / 2.0
    edge = max(10.0 * tol, 1e-6 * (hi - lo))
    flag = "bracket_edge" if (tau - lo <= edge or hi - tau <= edge) else None
    return LocalTemperature(float(tau), "distance", flag)


def local_temperature(
    rho_qubit: np.ndarray,
    energy: float,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tol: float = 1e-9,
) -> LocalTemperature:
    """Diagonal fast path when the reduced state carries no coherence, the
    distance-based estimator otherwise."""
    try:
        return local_temperature_diagonal(rho_qubit, energy)
    except ValueError:
        return local_temperature_distance(rho_qubit, energy, bracket, tol)


def local_temperatures(
    spec: SystemSpec, rho: np.ndarray
) -> dict[str, LocalTemperature]:
    """Reduced-state temperature of every qubit (tensor order of the spec)."""
    dims = [2] * spec.num_qubits
    out = {}
    for pos, label in enumerate(spec.qubit_labels):
        reduced = partial_trace(rho, dims, [pos])
        out[label] = local_temperature(reduced, spec.qubit_energies[pos])
    return out


def cooling_amounts(
    spec: SystemSpec,
    baths: Mapping[str, BathSpec],
    rho: np.ndarray,
    temperatures: Mapping[str, LocalTemperature] | None = None,
) -> dict[str, float]:
    """Delta = T_bath - tau for every qubit attached to the common c bath
    (c0 included in the two-bath topology). Positive means refrigeration."""
    temps = temperatures if temperatures is not None else local_temperatures(spec, rho)
    t_c = baths["c"].T
    return {
        spec.qubit_labels[pos]: t_c - temps[spec.qubit_labels[pos]].value
        for pos in spec.target_indices
    }


_THREE_BATH_REGIMES = {
    (1, -1, 1): "R1",    # absorption refrigerator
    (-1, 1, -1): "R2",
    (1, -1, -1): "R3",
    (1, 1, -1): "R4",
}
_TWO_BATH_REGIMES = {
    (-1, 1): "R1",       # targets heated
    (1, -1): "R2",       # targets cooled
}


def _sign(x: float) -> int:
    return 1 if x > 0 else -1


def classify_regime(
    currents: Mapping[str, float],
    w_dot: float,
    zero_tol: float,
    topology_baths: Sequence[str],
) -> str:
    """Sign-pattern label R1..R4 (three baths) or R1/R2 (two baths) with a
    +/-/0 suffix for the power sign against ``zero_tol``. Patterns outside
    the table yield "other" with the raw signs attached."""
    signs = tuple(_sign(currents[label]) for label in topology_baths)
    table = _THREE_BATH_REGIMES if len(signs) == 3 else _TWO_BATH_REGIMES
    label = table.get(signs)
    if label is None:
        rendered = ",".join("+" if s > 0 else "-" for s in signs)
        label = f"other({rendered})"
    if w_dot > zero_tol:
        suffix = "+"
    elif w_dot < -zero_tol:
        suffix = "-"
    else:
        suffix = "0"
    return label + suffix


@dataclass(frozen=True)
class ThermoRecord:
    """Every steady-state observable of one run."""

    heat_currents: dict[str, float]
    w_dot_total: float
    w_dot_parts: dict[str, float]
    s_dot: float
    entropy_prod: float
    temperatures: dict[str, LocalTemperature]
    cooling: dict[str, float]
    regime: str


def compute_thermo(
    spec: SystemSpec,
    baths: Mapping[str, BathSpec],
    channels_by_bath: Mapping[str, Sequence[JumpChannel]],
    rho: np.ndarray,
    mode: str,
    h_system: np.ndarray,
    h_local: np.ndarray,
    zero_tol: float | None = None,
) -> ThermoRecord:
    """Assemble the full thermodynamic record for a solved steady state.

    Local mode: currents against H_loc, power from the interaction parts.
    Global mode: currents against H_S, power identically zero (time-
    independent Hamiltonian; the first law holds exactly).
    """
    h_ref = h_local if mode == "local" else h_system
    currents = heat_currents(channels_by_bath, rho, h_ref)
    parts = interaction_parts(spec)
    if mode == "local":
        w_total, w_parts = power(channels_by_bath, rho, parts)
    else:
        w_total, w_parts = 0.0, {key: 0.0 for key in parts}
    s_dot, production = entropy_production(channels_by_bath, rho, baths, h_system)
    temps = local_temperatures(spec, rho)
    cooling = cooling_amounts(spec, baths, rho, temps)
    if zero_tol is None:
        zero_tol = 1e-12 * max(b.f for b in baths.values())
    regime = classify_regime(currents, w_total, zero_tol, spec.bath_labels)
    return ThermoRecord(
        heat_currents=currents,
        w_dot_total=w_total,
        w_dot_parts=w_parts,
        s_dot=s_dot,
        entropy_prod=production,
        temperatures=temps,
        cooling=cooling,
        regime=regime,
    )
