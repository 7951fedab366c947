"""Relative entropy, quantum Jensen-Shannon divergence and the Bures distance."""
from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch
from .linalg import DensityMatrix, as_array, dagger, operator_entropy, sqrtm_psd

SUPPORT_TOL = 1e-10


def _same_dim(rho, sigma):
    a, b = as_array(rho), as_array(sigma)
    if a.shape[-2:] != b.shape[-2:]:
        raise DimensionMismatch(f"dimensions differ: {a.shape[-1]} vs {b.shape[-1]}")
    return a, b


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho||sigma) = tr rho (log2 rho - log2 sigma), or ``math.inf``.

    The result is infinite when an eigenvector of ``rho`` with eigenvalue above
    the support tolerance has weight above the tolerance on the kernel of
    ``sigma``.
    """
    a, b = _same_dim(rho, sigma)
    lam, e = np.linalg.eigh(a)
    mu, f = np.linalg.eigh(b)
    lam = np.clip(lam, 0.0, None)
    keep = lam > SUPPORT_TOL
    lam, e = lam[keep], e[:, keep]
    # overlaps[i, j] = |<e_i|f_j>|^2
    overlaps = np.abs(e.conj().T @ f) ** 2
    in_support = mu > SUPPORT_TOL
    if np.any(overlaps[:, ~in_support] > SUPPORT_TOL):
        return math.inf
    log_mu = np.log2(mu[in_support])
    cross = overlaps[:, in_support] @ log_mu
    return float(np.sum(lam * np.log2(lam)) - np.sum(lam * cross))


def js_operators(a, b) -> np.ndarray:
    """H((a+b)/2) - (H(a) + H(b))/2 for positive operators of any trace.

    Accepts stacks of matrices; the expression is symmetric in its arguments
    bit-for-bit.
    """
    a, b = _same_dim(a, b)
    h_mid = operator_entropy(0.5 * (a + b))
    return h_mid - 0.5 * (operator_entropy(a) + operator_entropy(b))


def qjsd(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum Jensen-Shannon divergence in bits, always finite and in [0, 1]."""
    return float(js_operators(rho, sigma))


def qjsd_from_relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """The same divergence as the mean relative entropy to the midpoint."""
    mid = DensityMatrix(0.5 * (rho.mat + sigma.mat))
    return 0.5 * (relative_entropy(rho, mid) + relative_entropy(sigma, mid))


def js_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Square root of the QJSD; a metric on states."""
    return math.sqrt(max(qjsd(rho, sigma), 0.0))


def js_distance_array(a, b) -> np.ndarray:
    return np.sqrt(np.clip(js_operators(a, b), 0.0, None))


def root_fidelity_array(a, b) -> np.ndarray:
    """tr sqrt(sqrt(a) b sqrt(a)) for stacks of positive matrices."""
    a, b = _same_dim(a, b)
    s = sqrtm_psd(a)
    m = s @ b @ dagger(s)
    m = 0.5 * (m + dagger(m))
    return np.sqrt(np.clip(np.linalg.eigvalsh(m), 0.0, None)).sum(axis=-1)


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    return float(min(root_fidelity_array(rho, sigma), 1.0) ** 2)


def bures_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """sqrt(2 - 2 sqrt(F)), in [0, sqrt(2)]."""
    root_f = float(min(root_fidelity_array(rho, sigma), 1.0))
    return math.sqrt(max(2.0 - 2.0 * root_f, 0.0))

