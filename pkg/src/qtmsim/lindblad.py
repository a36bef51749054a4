"""Jump operators, rates, dissipators and the Liouvillian.

The jump channels are derived from a reference spectrum: the local
Hamiltonian for the local master equation, the full system Hamiltonian for
the global one. In both modes the coherent term of the generator keeps the
full H_S. Rates assume an Ohmic spectral density f*E*exp(-E/Omega); the Lamb
shift is dropped.

Operator convention: a channel operator A(E) raises energy (it maps the
E'-eigenspace to the E-eigenspace with E - E' = gap > 0), so the eta1 weight
multiplies the lowering term A† rho A (emission into the bath) and eta2 the
raising term A rho A† (absorption). A single qubit coupled to one bath then
relaxes to the Gibbs state at the bath temperature, which pins the
convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import expm1, exp, sqrt
from typing import Mapping, Sequence

import numpy as np

from .model import (
    BathSpec,
    SystemSpec,
    coupling_operators,
    local_hamiltonian,
    system_hamiltonian,
)
from .qlinalg import eig_hermitian

__all__ = [
    "LOCAL",
    "GLOBAL",
    "ConfigurationError",
    "JumpChannel",
    "Liouvillian",
    "transition_rates",
    "eigenoperators",
    "build_dissipators",
    "apply_dissipator",
    "liouvillian",
    "build_liouvillian",
    "default_gap_tol",
    "has_degenerate_levels",
]

LOCAL = "local"
GLOBAL = "global"

ZERO_OPERATOR_NORM = 1e-12


class ConfigurationError(ValueError):
    """Inconsistent master-equation configuration."""


@dataclass(frozen=True)
class JumpChannel:
    """One Lindblad channel: bath, Bohr gap, raising eigenoperator and rates.

    ``eta1``/``eta2`` obey eta1/eta2 = exp(gap/T); for three-body channels
    they already include the kappa^2 weight.
    """

    bath: str
    energy_gap: float
    operator: np.ndarray
    body_order: int
    eta1: float
    eta2: float


def transition_rates(gap: float, bath: BathSpec) -> tuple[float, float]:
    """Ohmic emission/absorption rates for one Bohr gap.

    eta1 = 2 f E e^{-E/Omega} e^{E/T} / (e^{E/T} - 1),
    eta2 = 2 f E e^{-E/Omega} / (e^{E/T} - 1),
    evaluated through expm1 so large E/T does not overflow.
    """
    if gap <= 0:
        raise ValueError(f"Bohr gap must be positive, got {gap}")
    x = gap / bath.T
    base = 2.0 * bath.f * gap * exp(-gap / bath.Omega)
    eta1 = base / (-expm1(-x))
    eta2 = base / expm1(x) if x < 700 else 0.0
    return eta1, eta2


def default_gap_tol(eigenvalues: np.ndarray) -> float:
    """Rotating-wave clustering tolerance: 1e-9 times the spectral span."""
    span = float(eigenvalues[-1] - eigenvalues[0])
    return 1e-9 * span


def has_degenerate_levels(eigenvalues: np.ndarray, tol: float) -> bool:
    diffs = np.diff(np.sort(eigenvalues))
    return bool(np.any(diffs <= tol))


def eigenoperators(
    h_ref: np.ndarray, coupling: np.ndarray, gap_tol: float | None = None
) -> list[tuple[float, np.ndarray]]:
    """Decompose a coupling operator into raising eigenoperators of h_ref.

    Returns (gap, A) pairs with gap > 0 and A = sum_{E-E'=gap} P(E) C P(E'),
    energy differences clustered within ``gap_tol``; operators with
    negligible norm are dropped. Gaps <= gap_tol count as zero and are
    discarded (only E > 0 channels exist).
    """
    spec = eig_hermitian(h_ref)
    evals, v = spec.eigenvalues, spec.eigenvectors
    if gap_tol is None:
        gap_tol = default_gap_tol(evals)
    c_tilde = v.conj().T @ np.asarray(coupling, dtype=np.complex128) @ v
    d = evals[:, None] - evals[None, :]  # d[k, l] = E_k - E_l
    ks, ls = np.nonzero(d > max(gap_tol, 0.0))
    if ks.size == 0:
        return []
    gaps = d[ks, ls]
    order = np.argsort(gaps, kind="stable")
    ks, ls, gaps = ks[order], ls[order], gaps[order]
    # split the sorted gap list where consecutive values differ by > gap_tol
    breaks = np.nonzero(np.diff(gaps) > gap_tol)[0] + 1
    out: list[tuple[float, np.ndarray]] = []
    for segment in np.split(np.arange(gaps.size), breaks):
        mask = np.zeros_like(c_tilde)
        mask[ks[segment], ls[segment]] = c_tilde[ks[segment], ls[segment]]
        a_op = v @ mask @ v.conj().T
        if np.linalg.norm(a_op) < ZERO_OPERATOR_NORM:
            continue
        out.append((float(gaps[segment].mean()), a_op))
    return out


def build_dissipators(
    spec: SystemSpec,
    baths: Mapping[str, BathSpec],
    mode: str,
    gap_tol: float | None = None,
) -> dict[str, list[JumpChannel]]:
    """Per-bath jump channels for the chosen master equation.

    ``mode`` is "local" (reference spectrum H_loc, kappa must be zero) or
    "global" (full H_S). Three-body channels carry the kappa^2 weight folded
    into their rates; zero-weight channels are dropped.
    """
    if mode == LOCAL:
        if baths["c"].kappa != 0.0:
            raise ConfigurationError(
                "the local master equation requires kappa = 0 for the c bath"
            )
        h_ref = local_hamiltonian(spec)
    elif mode == GLOBAL:
        h_ref = system_hamiltonian(spec)
    else:
        raise ConfigurationError(f"unknown master-equation mode {mode!r}")

    channels: dict[str, list[JumpChannel]] = {}
    for label in spec.bath_labels:
        bath = baths[label]
        bath_channels: list[JumpChannel] = []
        for body_order, coupling in coupling_operators(spec, label):
            weight = 1.0 if body_order == 2 else bath.kappa ** 2
            if weight == 0.0:
                continue
            for gap, a_op in eigenoperators(h_ref, coupling, gap_tol):
                eta1, eta2 = transition_rates(gap, bath)
                bath_channels.append(
                    JumpChannel(
                        bath=label,
                        energy_gap=gap,
                        operator=a_op,
                        body_order=body_order,
                        eta1=weight * eta1,
                        eta2=weight * eta2,
                    )
                )
        channels[label] = bath_channels
    return channels


def apply_dissipator(channels: Sequence[JumpChannel], rho: np.ndarray) -> np.ndarray:
    """GKSL dissipator of one bath applied to a state.

    eta1 [A† rho A - {A A†, rho}/2] + eta2 [A rho A† - {A† A, rho}/2]
    summed over the bath's channels.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    for ch in channels:
        a = ch.operator
        a_dag = a.conj().T
        if ch.eta1 != 0.0:
            aa_dag = a @ a_dag
            out += ch.eta1 * (
                a_dag @ rho @ a - 0.5 * (aa_dag @ rho + rho @ aa_dag)
            )
        if ch.eta2 != 0.0:
            a_dag_a = a_dag @ a
            out += ch.eta2 * (
                a @ rho @ a_dag - 0.5 * (a_dag_a @ rho + rho @ a_dag_a)
            )
    return out


class Liouvillian:
    """Generator of the master equation, rho_dot = -i[H, rho] + sum D_a(rho).

    ``rhs`` evaluates the right-hand side directly on density matrices; the
    dense superoperator ``matrix`` (column-stacking convention) is assembled
    lazily. Instances are immutable after construction and safe to share
    across threads.
    """

    def __init__(
        self,
        h_system: np.ndarray,
        channels: Mapping[str, Sequence[JumpChannel]],
    ):
        self.h_system = np.asarray(h_system, dtype=np.complex128)
        self.dim = self.h_system.shape[0]
        self.channels = {label: tuple(chs) for label, chs in channels.items()}
        l_ops = []
        for ch in self.all_channels:
            if ch.eta1 > 0.0:
                l_ops.append(sqrt(ch.eta1) * ch.operator.conj().T)
            if ch.eta2 > 0.0:
                l_ops.append(sqrt(ch.eta2) * ch.operator)
        if l_ops:
            self._l_stack = np.stack(l_ops)
        else:
            self._l_stack = np.zeros((0, self.dim, self.dim), dtype=np.complex128)
        self._l_stack_dag = self._l_stack.conj().transpose(0, 2, 1)
        self._drift = 0.5 * np.einsum(
            "kij,kjl->il", self._l_stack_dag, self._l_stack
        )

    @property
    def all_channels(self) -> tuple[JumpChannel, ...]:
        return tuple(ch for chs in self.channels.values() for ch in chs)

    def rhs(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=np.complex128)
        out = -1j * (self.h_system @ rho - rho @ self.h_system)
        if self._l_stack.shape[0]:
            jumps = np.einsum(
                "kij,kjl->il", self._l_stack @ rho, self._l_stack_dag
            )
            out += jumps - (self._drift @ rho + rho @ self._drift)
        return out

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense superoperator under column stacking: vec(rhs) = matrix @ vec."""
        eye = np.eye(self.dim, dtype=np.complex128)
        h = self.h_system
        m = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
        for k in range(self._l_stack.shape[0]):
            l_op = self._l_stack[k]
            m += np.kron(l_op.conj(), l_op)
        drift = self._drift
        m -= np.kron(eye, drift) + np.kron(drift.T, eye)
        return m


def liouvillian(
    h_coherent: np.ndarray, channels: Mapping[str, Sequence[JumpChannel]]
) -> Liouvillian:
    """Assemble the generator from a coherent Hamiltonian and jump channels."""
    return Liouvillian(h_coherent, channels)


def build_liouvillian(
    spec: SystemSpec,
    baths: Mapping[str, BathSpec],
    mode: str,
    gap_tol: float | None = None,
) -> Liouvillian:
    """Full pipeline: dissipators for the chosen mode, coherent term H_S."""
    channels = build_dissipators(spec, baths, mode, gap_tol)
    return Liouvillian(system_hamiltonian(spec), channels)
