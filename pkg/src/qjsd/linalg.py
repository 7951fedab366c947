"""Density matrices, Hermitian spectral functions and entropy kernels.

All entropies are in bits. Bipartite operators use the convention that
subsystem A carries the slow (most significant) index, i.e. basis state
``|i_A, j_B>`` sits at row ``i_A * dB + j_B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import entr

from .errors import DimensionMismatch, InvalidDensityMatrix, NonHermitianInput

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
LN2 = np.log(2.0)

SUBSYSTEMS = {"A": 0, "B": 1, 0: 0, 1: 1}


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator.

    The stored matrix is the Hermitian part of the input and is read-only.
    Construction raises :class:`InvalidDensityMatrix` when any invariant is
    violated beyond its tolerance.
    """

    mat: np.ndarray

    def __post_init__(self):
        a = np.array(self.mat, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise InvalidDensityMatrix(f"expected a square matrix, got shape {a.shape}")
        if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
            raise InvalidDensityMatrix("matrix is not Hermitian")
        a = 0.5 * (a + a.conj().T)
        tr = np.trace(a).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidDensityMatrix(f"trace is {tr!r}, expected 1")
        lam_min = np.linalg.eigvalsh(a)[0]
        if lam_min < -PSD_TOL:
            raise InvalidDensityMatrix(f"smallest eigenvalue {lam_min:.3e} is negative")
        a.setflags(write=False)
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.mat
        return self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


def as_array(a) -> np.ndarray:
    """Return the underlying complex array of a DensityMatrix or array-like."""
    if isinstance(a, DensityMatrix):
        return a.mat
    return np.asarray(a, dtype=complex)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermitian_eigendecompose(a) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues in descending order."""
    a = as_array(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if np.max(np.abs(a - a.conj().T), initial=0.0) > 1e-10:
        raise NonHermitianInput("input matrix is not Hermitian within 1e-10")
    lam, vecs = np.linalg.eigh(a)
    return Spectrum(lam[::-1].copy(), vecs[:, ::-1].copy())


def spectral_apply(a, func) -> np.ndarray:
    """Apply ``func`` to the eigenvalues of a Hermitian matrix (batched)."""
    a = as_array(a)
    lam, vecs = np.linalg.eigh(a)
    return (vecs * func(lam)[..., None, :]) @ dagger(vecs)


def sqrtm_psd(a) -> np.ndarray:
    """Square root of a positive semidefinite matrix; tiny negative eigenvalues clamp to 0."""
    return spectral_apply(a, lambda lam: np.sqrt(np.clip(lam, 0.0, None)))


def entropy_of_eigenvalues(lam: np.ndarray) -> np.ndarray:
    """-sum(lam log2 lam) along the last axis with 0 log 0 = 0."""
    return entr(np.clip(lam, 0.0, None)).sum(axis=-1) / LN2


def operator_entropy(a) -> np.ndarray:
    """Von Neumann entropy of positive operators of any trace; accepts stacks."""
    return entropy_of_eigenvalues(np.linalg.eigvalsh(as_array(a)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return float(operator_entropy(rho.mat))


def purity(rho: DensityMatrix) -> float:
    a = rho.mat
    # tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(a) ** 2))


def tensor(a, b) -> np.ndarray:
    return np.kron(as_array(a), as_array(b))


def _check_dims(n: int, dims) -> tuple[int, int]:
    d_a, d_b = (int(d) for d in dims)
    if d_a * d_b != n:
        raise DimensionMismatch(f"dims {d_a}x{d_b} do not match operator dimension {n}")
    return d_a, d_b


def _subsystem(keep) -> int:
    try:
        return SUBSYSTEMS[keep]
    except KeyError:
        raise ValueError(f"subsystem must be 'A' or 'B', got {keep!r}") from None


def ptrace(a: np.ndarray, dims, keep="A") -> np.ndarray:
    """Partial trace on raw arrays; leading batch axes are allowed."""
    a = np.asarray(a)
    d_a, d_b = _check_dims(a.shape[-1], dims)
    t = a.reshape(a.shape[:-2] + (d_a, d_b, d_a, d_b))
    if _subsystem(keep) == 0:
        return np.einsum("...ijkj->...ik", t)
    return np.einsum("...ijil->...jl", t)


def ptranspose(a: np.ndarray, dims, subsystem="B") -> np.ndarray:
    """Partial transpose on raw arrays; leading batch axes are allowed."""
    a = np.asarray(a)
    n = a.shape[-1]
    d_a, d_b = _check_dims(n, dims)
    t = a.reshape(a.shape[:-2] + (d_a, d_b, d_a, d_b))
    if _subsystem(subsystem) == 0:
        t = np.swapaxes(t, -4, -2)
    else:
        t = np.swapaxes(t, -3, -1)
    return t.reshape(a.shape[:-2] + (n, n))


def partial_trace(rho: DensityMatrix, dims=(2, 2), keep="A") -> DensityMatrix:
    """Reduced state on subsystem ``keep`` ('A' or 'B')."""
    return DensityMatrix(ptrace(rho.mat, dims, keep))


def partial_transpose(rho, dims=(2, 2), subsystem="B") -> np.ndarray:
    """Partial transpose of ``rho`` with respect to ``subsystem``; may be non-positive."""
    return ptranspose(as_array(rho), dims, subsystem)
