"""Dense complex linear algebra kernel used by every other module.

All operators are plain ``numpy.ndarray`` of ``complex128``. The vectorization
convention is column stacking (``order="F"``), fixed project-wide because the
superoperator assembly in :mod:`qtmsim.lindblad` depends on it:
``vec(A @ rho @ B) == kron(B.T, A) @ vec(rho)``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import reduce
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "HermitianSpectrum",
    "kron",
    "partial_trace",
    "eig_hermitian",
    "trace_distance",
    "vectorize",
    "devectorize",
]

HERMITICITY_RTOL = 1e-10


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are ascending; columns of ``eigenvectors`` are the
    corresponding orthonormal eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128)


def kron(*matrices) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    if not matrices:
        raise ValueError("kron requires at least one factor")
    return reduce(np.kron, (_as_complex(m) for m in matrices))


def partial_trace(rho, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out all subsystems not in ``keep``.

    ``dims`` lists the subsystem dimensions in tensor order; ``keep`` holds
    indices of the subsystems to retain (output ordered by ascending index).
    """
    rho = _as_complex(rho)
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] != total:
        raise ValueError(
            f"dims product {total} does not match matrix shape {rho.shape}"
        )
    k = len(dims)
    keep = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= k for i in keep):
        raise ValueError(f"keep indices {keep} out of range for {k} subsystems")
    if len(keep) == k:
        return rho.copy()
    letters = string.ascii_lowercase
    if 2 * k > len(letters):
        raise ValueError("too many subsystems for einsum labels")
    row = list(letters[:k])
    col = [letters[k + i] if i in keep else letters[i] for i in range(k)]
    out = [row[i] for i in keep] + [col[i] for i in keep]
    reduced = np.einsum(
        "".join(row + col) + "->" + "".join(out), rho.reshape(dims + dims)
    )
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    return reduced.reshape(d_keep, d_keep)


def eig_hermitian(h) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix, ascending eigenvalues.

    The input is symmetrized as (h + h†)/2 before solving; a Hermiticity
    defect beyond ``1e-10 * ||h||`` is a precondition error.
    """
    h = _as_complex(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = np.linalg.norm(h)
    defect = np.linalg.norm(h - h.conj().T)
    if defect > HERMITICITY_RTOL * max(scale, 1e-300):
        raise ValueError(
            f"matrix is not Hermitian: defect {defect:.3e} exceeds "
            f"{HERMITICITY_RTOL:.0e} * ||h||"
        )
    evals, evecs = np.linalg.eigh((h + h.conj().T) / 2.0)
    return HermitianSpectrum(eigenvalues=evals, eigenvectors=evecs)


def trace_distance(rho, sigma) -> float:
    """Trace norm of the difference, Tr sqrt((rho-sigma)†(rho-sigma)).

    Note: no conventional 1/2 prefactor; orthogonal pure states are at
    distance 2.
    """
    rho = _as_complex(rho)
    sigma = _as_complex(sigma)
    if rho.shape != sigma.shape or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"shape mismatch: {rho.shape} vs {sigma.shape}")
    return float(np.linalg.svd(rho - sigma, compute_uv=False).sum())


def vectorize(rho) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return _as_complex(rho).flatten(order="F")


def devectorize(v, dim: int | None = None) -> np.ndarray:
    """Inverse of :func:`vectorize`; vector length must be a perfect square
    unless ``dim`` is given."""
    v = _as_complex(v).ravel()
    if dim is None:
        dim = isqrt(v.size)
        if dim * dim != v.size:
            raise ValueError(f"vector length {v.size} is not a perfect square")
    elif dim * dim != v.size:
        raise ValueError(f"vector length {v.size} != {dim}^2")
    return v.reshape(dim, dim, order="F").copy()
