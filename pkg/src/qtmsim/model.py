"""Hamiltonians, coupling operators and initial states of the refrigerator.

Conventions fixed here and relied on everywhere else:

* units: hbar = k_B = 1, all quantities dimensionless;
* qubit tensor ordering: (h, r, c1, ..., cn) for the three-bath topology and
  (h, c0, c1, ..., cn) for the two-bath one, h always first;
* computational |0> is the sigma^z = +1 (higher-energy) state, so <0|rho|0>
  of a reduced qubit is its excited-state population. This is what makes the
  closed-form local temperature in :mod:`qtmsim.thermo` return tau = T on a
  Gibbs state.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

import numpy as np

from .qlinalg import kron

__all__ = [
    "THREE_BATH",
    "TWO_BATH",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "IDENTITY_2",
    "EngineeredSectors",
    "HeisenbergStar",
    "SystemSpec",
    "BathSpec",
    "TemperatureOrderingWarning",
    "allowed_sectors",
    "embed",
    "qubit_gibbs",
    "local_hamiltonian",
    "dicke_state",
    "transport_kets",
    "sector_interaction",
    "engineered_interaction",
    "star_interaction",
    "interaction_hamiltonian",
    "system_hamiltonian",
    "coupling_operators",
    "sector_residual",
    "population_condition",
    "thermal_product_state",
    "check_bath_ordering",
]

THREE_BATH = "three_bath"
TWO_BATH = "two_bath"

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)   # |0><1|
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=np.complex128)  # |1><0|


class TemperatureOrderingWarning(UserWarning):
    """Advisory: bath temperatures violate T_h > T_r >= T_c."""


@dataclass(frozen=True)
class EngineeredSectors:
    """Engineered interaction: magnetization sector -> coupling strength.

    Keys live in {-n+2, -n+4, ..., n} (parity of n); the coupling is applied
    exactly once per sector.
    """

    sectors: Mapping[int, float]


@dataclass(frozen=True)
class HeisenbergStar:
    """Heisenberg star couplings.

    Three-bath: centers are (h, r) with strengths ``J_h``, ``J_r``.
    Two-bath: the single center h uses ``J_h``; ``J_r`` must be None.
    Ferromagnetic (negative) couplings are the default.
    """

    J_h: float = -1.0
    J_r: float | None = -1.0


Interaction = EngineeredSectors | HeisenbergStar


@dataclass(frozen=True)
class SystemSpec:
    """Static description of the (n+2)-qubit system.

    ``E_c`` has length n for the three-bath topology; for the two-bath one it
    has length n+1 with index 0 holding E_{c0} (the relabelled room qubit).
    ``g`` is the global interaction prefactor.
    """

    n: int
    topology: str
    E_h: float
    E_c: tuple[float, ...]
    E_r: float | None = None
    interaction: Interaction = field(default_factory=lambda: EngineeredSectors({}))
    g: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one target qubit, got n={self.n}")
        if self.topology not in (THREE_BATH, TWO_BATH):
            raise ValueError(f"unknown topology {self.topology!r}")
        expected = self.n if self.topology == THREE_BATH else self.n + 1
        if len(self.E_c) != expected:
            raise ValueError(
                f"E_c must have length {expected} for {self.topology}, "
                f"got {len(self.E_c)}"
            )
        if self.topology == THREE_BATH and self.E_r is None:
            raise ValueError("three-bath topology requires E_r")
        if self.topology == TWO_BATH and self.E_r is not None:
            raise ValueError("two-bath topology has no r qubit; E_r must be None")
        energies = [self.E_h, *self.E_c] + (
            [self.E_r] if self.E_r is not None else []
        )
        if any(e <= 0 for e in energies):
            raise ValueError("all qubit energies must be positive")

    @property
    def num_qubits(self) -> int:
        return self.n + 2

    @property
    def dim(self) -> int:
        return 2 ** self.num_qubits

    @property
    def qubit_labels(self) -> tuple[str, ...]:
        if self.topology == THREE_BATH:
            return ("h", "r") + tuple(f"c{i}" for i in range(1, self.n + 1))
        return ("h",) + tuple(f"c{i}" for i in range(self.n + 1))

    @property
    def qubit_energies(self) -> tuple[float, ...]:
        if self.topology == THREE_BATH:
            return (self.E_h, float(self.E_r)) + tuple(self.E_c)
        return (self.E_h,) + tuple(self.E_c)

    @property
    def target_indices(self) -> tuple[int, ...]:
        """Tensor positions of the qubits attached to the common c bath."""
        if self.topology == THREE_BATH:
            return tuple(range(2, self.n + 2))
        return tuple(range(1, self.n + 2))

    @property
    def bath_labels(self) -> tuple[str, ...]:
        return ("h", "r", "c") if self.topology == THREE_BATH else ("h", "c")

    def bath_of_qubit(self, position: int) -> str:
        if position == 0:
            return "h"
        if self.topology == THREE_BATH and position == 1:
            return "r"
        return "c"

    @property
    def room_energy(self) -> float:
        """E_r, or E_{c0} in the two-bath topology where c0 plays that role."""
        return float(self.E_r) if self.topology == THREE_BATH else self.E_c[0]


@dataclass(frozen=True)
class BathSpec:
    """One bosonic bath: temperature, Ohmic coupling f, cutoff Omega, and the
    three-body weight kappa (meaningful only for the common c bath)."""

    label: str
    T: float
    f: float
    Omega: float
    kappa: float = 0.0

    def __post_init__(self):
        if self.label not in ("h", "r", "c"):
            raise ValueError(f"unknown bath label {self.label!r}")
        if self.T <= 0:
            raise ValueError("bath temperature must be positive")
        if self.f < 0 or self.Omega <= 0 or self.kappa < 0:
            raise ValueError("need f >= 0, Omega > 0, kappa >= 0")


Baths = Mapping[str, BathSpec]


def check_bath_ordering(spec: SystemSpec, baths: Baths) -> None:
    """Warn (advisory only) when T_h > T_r >= T_c does not hold."""
    t_h = baths["h"].T
    t_c = baths["c"].T
    t_r = baths["r"].T if spec.topology == THREE_BATH else t_c
    if not (t_h > t_r >= t_c):
        warnings.warn(
            f"bath temperatures (T_h={t_h}, T_r={t_r}, T_c={t_c}) violate "
            "T_h > T_r >= T_c",
            TemperatureOrderingWarning,
            stacklevel=2,
        )


def allowed_sectors(n: int) -> tuple[int, ...]:
    """Magnetizations m_c that support a transport subspace: -n+2, ..., n."""
    return tuple(range(-n + 2, n + 1, 2))


def embed(op: np.ndarray, position: int, num_qubits: int) -> np.ndarray:
    """Single-qubit operator -> full Hilbert space at the given tensor slot."""
    factors = [IDENTITY_2] * num_qubits
    factors[position] = op
    return kron(*factors)


def local_hamiltonian(spec: SystemSpec) -> np.ndarray:
    """Sum of (E_alpha/2) sigma^z_alpha; diagonal in the computational basis."""
    nq = spec.num_qubits
    h = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    for pos, energy in enumerate(spec.qubit_energies):
        h += 0.5 * energy * embed(SIGMA_Z, pos, nq)
    return h


def dicke_state(n: int, m_c: int) -> np.ndarray:
    """Normalized permutation-invariant state of n qubits at magnetization m_c.

    m_c must lie in {-n, -n+2, ..., n}; the state is the equal superposition
    of the C(n, (m_c+n)/2) basis states with (m_c+n)/2 excitations (|0> bits).
    """
    if (m_c + n) % 2 != 0 or not -n <= m_c <= n:
        raise ValueError(f"invalid magnetization m_c={m_c} for n={n}")
    n_excited = (m_c + n) // 2
    multiplicity = comb(n, n_excited)
    vec = np.zeros(2 ** n, dtype=np.complex128)
    for idx in range(2 ** n):
        # bit 0 <-> |0> <-> m = +1 (excited)
        if bin(idx).count("1") == n - n_excited:
            vec[idx] = 1.0
    return vec / np.sqrt(multiplicity)


def transport_kets(spec: SystemSpec, m_c: int) -> tuple[np.ndarray, np.ndarray]:
    """The pair of (n+2)-qubit kets coupled by a sector interaction.

    The upper ket (h excited, room ground, targets at magnetization m_c)
    carries the N^{1/2} factor, i.e. it is the *unnormalized* sum of Dicke
    components with unit amplitude each. The lower ket is the product state
    with h ground, room excited and every target in the ground state.
    """
    n = spec.n
    n_excited = (m_c + n) // 2
    multiplicity = comb(n, n_excited)
    ket0 = np.array([1, 0], dtype=np.complex128)  # m = +1
    ket1 = np.array([0, 1], dtype=np.complex128)  # m = -1
    psi = np.sqrt(multiplicity) * dicke_state(n, m_c)
    upper = kron(ket0, ket1, psi)
    lower = kron(ket1, ket0, dicke_state(n, -n))
    return upper, lower


def sector_interaction(spec: SystemSpec, m_c: int) -> np.ndarray:
    """g_(m_c) [ |m_(m_c)><m_(-n)| + h.c. ] for one magnetization sector."""
    if not isinstance(spec.interaction, EngineeredSectors):
        raise ValueError("sector_interaction requires an engineered interaction")
    if m_c not in allowed_sectors(spec.n):
        raise ValueError(
            f"m_c={m_c} outside the transport sectors {allowed_sectors(spec.n)}"
        )
    g_mc = spec.interaction.sectors.get(m_c)
    if g_mc is None:
        raise ValueError(f"no coupling configured for sector m_c={m_c}")
    upper, lower = transport_kets(spec, m_c)
    h = g_mc * np.outer(upper, lower.conj())
    return h + h.conj().T


def engineered_interaction(spec: SystemSpec) -> np.ndarray:
    """Sum of the configured sector interactions (coupling applied once)."""
    if not isinstance(spec.interaction, EngineeredSectors):
        raise ValueError("engineered_interaction requires an engineered interaction")
    if not spec.interaction.sectors:
        raise ValueError("no magnetization sectors configured")
    h = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    for m_c in sorted(spec.interaction.sectors):
        h += sector_interaction(spec, m_c)
    return h


def star_interaction(spec: SystemSpec) -> np.ndarray:
    """Heisenberg star Hamiltonian, (J/4) sum over center-periphery bonds.

    Centers are (h, r) for three baths and h alone for two baths; targets are
    the periphery. No center-center or periphery-periphery bonds.
    """
    if not isinstance(spec.interaction, HeisenbergStar):
        raise ValueError("star_interaction requires a HeisenbergStar interaction")
    nq = spec.num_qubits
    if spec.topology == THREE_BATH:
        if spec.interaction.J_r is None:
            raise ValueError("three-bath star needs J_r")
        centers = [(0, spec.interaction.J_h), (1, spec.interaction.J_r)]
        periphery = list(range(2, nq))
    else:
        if spec.interaction.J_r is not None:
            raise ValueError("two-bath star has a single center; J_r must be None")
        centers = [(0, spec.interaction.J_h)]
        periphery = list(range(1, nq))
    h = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    for center, coupling in centers:
        for i in periphery:
            for pauli in (SIGMA_X, SIGMA_Y, SIGMA_Z):
                h += (coupling / 4.0) * (
                    embed(pauli, center, nq) @ embed(pauli, i, nq)
                )
    return h


def interaction_hamiltonian(spec: SystemSpec) -> np.ndarray:
    if isinstance(spec.interaction, EngineeredSectors):
        return engineered_interaction(spec)
    return star_interaction(spec)


def system_hamiltonian(spec: SystemSpec) -> np.ndarray:
    """H = H_loc + g * H_int."""
    return local_hamiltonian(spec) + spec.g * interaction_hamiltonian(spec)


def coupling_operators(spec: SystemSpec, bath_label: str) -> list[tuple[int, np.ndarray]]:
    """System-side coupling operators for one bath as (body_order, operator).

    h (and r, three-bath): single 2-body sigma^x. The common c bath gets the
    collective 2-body flip sum plus, when at least one target pair exists, the
    3-body exchange sum (the kappa weight is applied by the dissipator
    builder, not here). Two-bath topology includes c0 in the c sums.
    """
    nq = spec.num_qubits
    if bath_label == "h":
        return [(2, embed(SIGMA_X, 0, nq))]
    if bath_label == "r":
        if spec.topology != THREE_BATH:
            raise ValueError("no r bath in the two-bath topology")
        return [(2, embed(SIGMA_X, 1, nq))]
    if bath_label != "c":
        raise ValueError(f"unknown bath {bath_label!r}")
    members = spec.target_indices
    two_body = sum(embed(SIGMA_X, i, nq) for i in members)
    ops = [(2, two_body)]
    if len(members) >= 2:
        three_body = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
        for a_idx, i in enumerate(members):
            for j in members[a_idx + 1:]:
                three_body += embed(SIGMA_PLUS, i, nq) @ embed(SIGMA_MINUS, j, nq)
                three_body += embed(SIGMA_MINUS, i, nq) @ embed(SIGMA_PLUS, j, nq)
        ops.append((3, three_body))
    return ops


def _target_energy(spec: SystemSpec) -> float:
    """Mean target-qubit energy; exact when the E_{c_i} are uniform."""
    if spec.topology == THREE_BATH:
        return float(np.mean(spec.E_c))
    return float(np.mean(spec.E_c[1:]))


def sector_residual(spec: SystemSpec, m_c: int) -> float:
    """Energy mismatch f_(m_c) = E_h - E_r + ((m_c+n)/2) E_c of one sector.

    Zero exactly when the sector interaction conserves local energy (the
    self-contained condition). In the two-bath topology E_{c0} plays E_r.
    """
    k = (m_c + spec.n) / 2.0
    return spec.E_h - spec.room_energy + k * _target_energy(spec)


def population_condition(spec: SystemSpec, baths: Baths, m_c: int) -> bool:
    """Whether the transport subspace is biased toward cooling:
    ((m_c+n)/2) E_c/T_c + E_h/T_h < E_r/T_r (strict)."""
    k = (m_c + spec.n) / 2.0
    t_c = baths["c"].T
    t_r = baths["r"].T if spec.topology == THREE_BATH else t_c
    lhs = k * _target_energy(spec) / t_c + spec.E_h / baths["h"].T
    return lhs < spec.room_energy / t_r


def qubit_gibbs(energy: float, temperature: float) -> np.ndarray:
    """Single-qubit thermal state for H = (E/2) sigma^z; |0> is excited."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    x = energy / temperature
    p_excited = 1.0 / (1.0 + np.exp(x)) if x < 700 else 0.0
    return np.diag([p_excited, 1.0 - p_excited]).astype(np.complex128)


def thermal_product_state(spec: SystemSpec, baths: Baths) -> np.ndarray:
    """Initial state: each qubit in equilibrium with its own bath."""
    factors = [
        qubit_gibbs(energy, baths[spec.bath_of_qubit(pos)].T)
        for pos, energy in enumerate(spec.qubit_energies)
    ]
    return kron(*factors)
