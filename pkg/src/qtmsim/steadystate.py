"""Steady-state solvers: dense null space and long-time integration.

The null-space backend is the reference for small systems (superoperator up
to 4096 x 4096, i.e. n <= 4); the integrator is an independent check and the
scaling backend beyond that.

The integrator is classical fixed-step RK4. For a linear generator the RK4
update is the exact degree-4 Taylor polynomial of exp(h L), whose fixed
points coincide with ker(L), so the integrator has no discretization bias in
the steady state itself. When the dense superoperator fits, blocks of RK4
steps are applied at once by squaring the one-step propagator (exact step
aggregation; the micro step stays fixed), with the state Hermitized and
trace-renormalized after every applied block and the block length capped so
the convergence criterion keeps its meaning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lindblad import Liouvillian
from .qlinalg import devectorize, vectorize

__all__ = [
    "DENSE_LIMIT",
    "SteadyStateError",
    "NonUniqueSteadyStateError",
    "DenseLimitError",
    "EvolveTimeoutError",
    "StateDiagnostics",
    "SteadyStateReport",
    "validate_state",
    "steady_state_nullspace",
    "steady_state_kernel_projection",
    "steady_state_evolve",
    "solve_steady_state",
]

DENSE_LIMIT = 4096          # max superoperator dimension D^2 for dense solves
POLYNOMIAL_LIMIT = 2048     # max D^2 for the precomputed RK4 propagator
BLOCK_TIME_CAP = 1024.0     # max aggregated step, keeps ||drho||/dt meaningful


class SteadyStateError(RuntimeError):
    pass


class NonUniqueSteadyStateError(SteadyStateError):
    def __init__(self, kernel_dimension: int):
        super().__init__(
            f"Liouvillian kernel dimension estimate is {kernel_dimension}, "
            "expected 1"
        )
        self.kernel_dimension = kernel_dimension


class DenseLimitError(SteadyStateError):
    def __init__(self, dim_sq: int):
        super().__init__(
            f"superoperator dimension {dim_sq} exceeds the dense limit "
            f"{DENSE_LIMIT}; use the evolve backend"
        )


class EvolveTimeoutError(SteadyStateError):
    def __init__(self, t_max: float, residual: float):
        super().__init__(
            f"no steady state within t_max={t_max:g} "
            f"(last rate of change {residual:.3e})"
        )
        self.residual = residual


@dataclass(frozen=True)
class StateDiagnostics:
    trace_error: float
    hermiticity_defect: float
    min_eigenvalue: float


@dataclass(frozen=True)
class SteadyStateReport:
    """Validated steady state with solver diagnostics."""

    rho: np.ndarray
    residual: float
    trace_error: float
    min_eigenvalue: float
    backend: str
    kernel_dimension_estimate: int


def validate_state(rho: np.ndarray) -> StateDiagnostics:
    """Trace error, Hermiticity defect and minimum eigenvalue of a state."""
    rho = np.asarray(rho, dtype=np.complex128)
    trace_error = abs(np.trace(rho) - 1.0)
    defect = float(np.linalg.norm(rho - rho.conj().T))
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)[0])
    return StateDiagnostics(float(trace_error), defect, min_eig)


def _normalize(rho: np.ndarray) -> np.ndarray:
    rho = (rho + rho.conj().T) / 2.0
    return rho / np.trace(rho).real


def _report(liou: Liouvillian, rho: np.ndarray, backend: str, kernel_dim: int
            ) -> SteadyStateReport:
    diag = validate_state(rho)
    residual = float(np.linalg.norm(liou.rhs(rho)))
    return SteadyStateReport(
        rho=rho,
        residual=residual,
        trace_error=diag.trace_error,
        min_eigenvalue=diag.min_eigenvalue,
        backend=backend,
        kernel_dimension_estimate=kernel_dim,
    )


def steady_state_nullspace(liou: Liouvillian, tol: float = 1e-10) -> SteadyStateReport:
    """Kernel vector of the dense superoperator via SVD.

    The kernel dimension estimate counts singular values below tol * s_max;
    anything other than 1 raises :class:`NonUniqueSteadyStateError`.
    """
    dim_sq = liou.dim ** 2
    if dim_sq > DENSE_LIMIT:
        raise DenseLimitError(dim_sq)
    _, s, vh = np.linalg.svd(liou.matrix)
    kernel_dim = int(np.sum(s <= tol * s[0]))
    if kernel_dim != 1:
        raise NonUniqueSteadyStateError(kernel_dim)
    rho = devectorize(vh[-1].conj(), liou.dim)
    trace = np.trace(rho)
    if abs(trace) < 1e-12:
        raise SteadyStateError("kernel vector has (numerically) zero trace")
    rho = _normalize(rho / trace)
    return _report(liou, rho, "nullspace", kernel_dim)


def steady_state_kernel_projection(
    liou: Liouvillian, rho0: np.ndarray, tol: float = 1e-10
) -> SteadyStateReport:
    """Asymptotic state for a degenerate kernel: lim exp(Lt) rho0.

    Common-bath couplings leave dark sectors (for two or more equal-energy
    targets under the local equation), so the kernel is multi-dimensional and
    the limit depends on the initial state. Each left null vector J of the
    superoperator is a conserved quantity, Tr[J† rho(t)] = const; expanding
    the limit in the right null basis and matching every conserved quantity
    against rho0 gives the exact spectral projection onto ker(L), provided
    the zero eigenvalue is semisimple (singular Gram matrix otherwise).
    """
    dim_sq = liou.dim ** 2
    if dim_sq > DENSE_LIMIT:
        raise DenseLimitError(dim_sq)
    u, s, vh = np.linalg.svd(liou.matrix)
    kernel_dim = int(np.sum(s <= tol * s[0]))
    if kernel_dim < 1:
        raise NonUniqueSteadyStateError(kernel_dim)
    right = vh[dim_sq - kernel_dim:].conj().T   # columns span ker(L)
    left = u[:, dim_sq - kernel_dim:]           # columns span ker(L†)
    gram = left.conj().T @ right
    target = left.conj().T @ vectorize(rho0)
    try:
        coeff = np.linalg.solve(gram, target)
    except np.linalg.LinAlgError as exc:
        raise SteadyStateError(
            "zero eigenvalue is not semisimple; use the evolve backend"
        ) from exc
    rho = _normalize(devectorize(right @ coeff, liou.dim))
    return _report(liou, rho, "kernel_projection", kernel_dim)


def _stability_step(liou: Liouvillian) -> float:
    """Step bound from the spectral extent of the generator: Bohr-frequency
    span (imaginary axis) plus the decay scale (real axis).

    Without any dissipative channel the coherences never decay physically,
    so the step shrinks further to keep RK4's numerical damping of purely
    imaginary modes negligible over the integration horizon.
    """
    evals = np.linalg.eigvalsh((liou.h_system + liou.h_system.conj().T) / 2.0)
    span = float(evals[-1] - evals[0])
    decay = 4.0 * float(np.linalg.norm(liou._drift, 2))
    scale = span + decay
    if scale <= 0.0:
        return 1.0
    margin = 2.5 if liou._l_stack.shape[0] else 0.25
    return margin / scale


def _rk4_polynomial(matrix: np.ndarray, h: float) -> np.ndarray:
    m1 = h * matrix
    m2 = m1 @ m1
    eye = np.eye(matrix.shape[0], dtype=np.complex128)
    return eye + m1 + m2 / 2.0 + (m2 @ m1) / 6.0 + (m2 @ m2) / 24.0


def _evolve_polynomial(
    liou: Liouvillian, rho: np.ndarray, h: float, conv_tol: float, t_max: float
) -> np.ndarray:
    """Propagator-squaring RK4 driver (superoperator fits in memory)."""
    h_floor = h * 2.0 ** -40
    propagator = _rk4_polynomial(liou.matrix, h)
    block_t = h
    streak = 0
    t = 0.0
    v = vectorize(rho)
    while t < t_max:
        w = propagator @ v
        nxt = devectorize(w, liou.dim)
        trace = np.trace(nxt).real
        if not np.isfinite(nxt).all() or abs(trace - 1.0) > 0.5:
            h /= 2.0
            if h < h_floor:
                raise SteadyStateError(
                    "step size collapsed without a stable integration step"
                )
            propagator = _rk4_polynomial(liou.matrix, h)
            block_t = h
            streak = 0
            continue
        nxt = vectorize(_normalize(nxt))
        delta = float(np.linalg.norm(nxt - v)) / block_t
        v = nxt
        t += block_t
        if delta < conv_tol:
            # confirm with the true residual: a rotating trajectory can give
            # a small per-block displacement without being stationary
            rho_now = devectorize(v, liou.dim)
            if float(np.linalg.norm(liou.rhs(rho_now))) <= 10.0 * conv_tol:
                return rho_now
        streak += 1
        if streak >= 3 and 2.0 * block_t <= BLOCK_TIME_CAP:
            squared = propagator @ propagator
            if np.isfinite(squared).all():
                propagator = squared
                block_t *= 2.0
            streak = 0
    raise EvolveTimeoutError(
        t_max, float(np.linalg.norm(liou.rhs(devectorize(v, liou.dim))))
    )


def _evolve_matrix_free(
    liou: Liouvillian, rho: np.ndarray, h: float, conv_tol: float, t_max: float
) -> np.ndarray:
    """Plain per-step RK4 on density matrices (scaling path)."""
    h_floor = h * 2.0 ** -40
    t = 0.0
    while t < t_max:
        k1 = liou.rhs(rho)
        k2 = liou.rhs(rho + (h / 2.0) * k1)
        k3 = liou.rhs(rho + (h / 2.0) * k2)
        k4 = liou.rhs(rho + h * k3)
        nxt = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        trace = np.trace(nxt).real
        if not np.isfinite(nxt).all() or abs(trace - 1.0) > 0.5:
            h /= 2.0
            if h < h_floor:
                raise SteadyStateError(
                    "step size collapsed without a stable integration step"
                )
            continue
        nxt = _normalize(nxt)
        delta = float(np.linalg.norm(nxt - rho)) / h
        rho = nxt
        t += h
        if delta < conv_tol and float(np.linalg.norm(liou.rhs(rho))) <= 10.0 * conv_tol:
            return rho
    raise EvolveTimeoutError(t_max, float(np.linalg.norm(liou.rhs(rho))))


def steady_state_evolve(
    liou: Liouvillian,
    rho0: np.ndarray | None = None,
    dt0: float | None = None,
    conv_tol: float = 1e-10,
    t_max: float = 1e7,
) -> SteadyStateReport:
    """Long-time RK4 integration until ||rho(t+dt)-rho(t)||/dt < conv_tol.

    The state is Hermitized and trace-renormalized after every applied step;
    a non-finite or blown-up step halves the step size and retries. ``rho0``
    defaults to the maximally mixed state (the harness passes the thermal
    product state).
    """
    dim = liou.dim
    if rho0 is None:
        rho0 = np.eye(dim, dtype=np.complex128) / dim
    rho = _normalize(np.asarray(rho0, dtype=np.complex128))
    if float(np.linalg.norm(liou.rhs(rho))) <= conv_tol:
        return _report(liou, rho, "evolve", 1)
    h = float(dt0) if dt0 is not None else _stability_step(liou)
    if dim ** 2 <= POLYNOMIAL_LIMIT:
        rho = _evolve_polynomial(liou, rho, h, conv_tol, t_max)
    else:
        rho = _evolve_matrix_free(liou, rho, h, conv_tol, t_max)
    return _report(liou, rho, "evolve", 1)


def solve_steady_state(
    liou: Liouvillian,
    method: str = "auto",
    rho0: np.ndarray | None = None,
    **kwargs,
) -> SteadyStateReport:
    """Dispatch: "nullspace", "evolve", or "auto".

    "auto" uses the dense null space while it fits and falls back to the
    kernel projection from ``rho0`` when the kernel is degenerate (and to
    time evolution if even that fails); beyond the dense limit it integrates.
    """
    if method == "auto":
        if liou.dim ** 2 > DENSE_LIMIT:
            return steady_state_evolve(liou, rho0=rho0, **kwargs)
        try:
            return steady_state_nullspace(liou, **kwargs)
        except NonUniqueSteadyStateError:
            pass
        init = rho0
        if init is None:
            init = np.eye(liou.dim, dtype=np.complex128) / liou.dim
        try:
            return steady_state_kernel_projection(liou, init, **kwargs)
        except SteadyStateError:
            return steady_state_evolve(liou, rho0=init)
    if method == "nullspace":
        return steady_state_nullspace(liou, **kwargs)
    if method == "evolve":
        return steady_state_evolve(liou, rho0=rho0, **kwargs)
    raise ValueError(f"unknown solver {method!r}")
